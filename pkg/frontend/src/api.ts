// Typed wrappers over the service's JSON API. The client renders only
// strings received here; it never synthesizes answer content.

export type Cell = string | number | boolean | null | string[];

export interface QueryResponse {
  status: "answered" | "unsupported" | "error";
  answer_text: string;
  cypher: string | null;
  columns: string[];
  rows: Cell[][];
  intent: string;
  elapsed_ms: number;
  session_id: string;
}

export interface HistoryEntry {
  text: string;
  status: string;
  answer_text: string;
  cypher: string | null;
  intent: string;
}

export interface SchemaDocument {
  labels: Record<string, Record<string, string | null>>;
  relationships: Record<string, { from: string; to: string }>;
  entities: Record<string, string[]>;
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(message: string, readonly status?: number) {
    super(message);
    this.name = "ApiError";
  }
}

export class ApiClient {
  constructor(
    private readonly fetchFn: FetchLike,
    private readonly baseUrl: string = "",
  ) {}

  async query(text: string, sessionId: string | null): Promise<QueryResponse> {
    const body: Record<string, string> = { text };
    if (sessionId) body.session_id = sessionId;
    let response: Response;
    try {
      response = await this.fetchFn(`${this.baseUrl}/api/query`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(body),
      });
    } catch (err) {
      throw new ApiError(`network failure: ${String(err)}`);
    }
    if (!response.ok) {
      throw new ApiError(`server returned HTTP ${response.status}`, response.status);
    }
    return (await response.json()) as QueryResponse;
  }

  async history(sessionId: string): Promise<HistoryEntry[]> {
    const response = await this.fetchFn(
      `${this.baseUrl}/api/history?session_id=${encodeURIComponent(sessionId)}`,
    );
    if (!response.ok) return [];
    const body = (await response.json()) as { entries: HistoryEntry[] };
    return body.entries ?? [];
  }

  async unitsByProperty(): Promise<Record<string, string>> {
    // property -> unit map derived from the schema endpoint; empty on failure
    try {
      const response = await this.fetchFn(`${this.baseUrl}/api/schema`);
      if (!response.ok) return {};
      const schema = (await response.json()) as SchemaDocument;
      const units: Record<string, string> = {};
      for (const props of Object.values(schema.labels)) {
        for (const [prop, unit] of Object.entries(props)) {
          if (unit) units[prop] = unit;
        }
      }
      return units;
    } catch {
      return {};
    }
  }
}
