// The chat application: one input, one transcript, one in-flight query at
// a time. All displayed content comes from the service's JSON API.

import { ApiClient, ApiError, type FetchLike, type QueryResponse } from "./api.js";
import { renderBubble } from "./render.js";

const SESSION_KEY = "amkg.session";

export interface StorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
}

export interface ChatAppOptions {
  root: HTMLElement;
  fetchFn: FetchLike;
  storage: StorageLike;
  baseUrl?: string;
}

export class ChatApp {
  readonly messages: HTMLElement;
  readonly input: HTMLInputElement;
  readonly sendButton: HTMLButtonElement;
  readonly statusLine: HTMLElement;

  private readonly api: ApiClient;
  private readonly storage: StorageLike;
  private units: Record<string, string> = {};
  private pending = false;

  constructor(options: ChatAppOptions) {
    this.api = new ApiClient(options.fetchFn, options.baseUrl ?? "");
    this.storage = options.storage;

    options.root.innerHTML = "";
    const header = document.createElement("header");
    const title = document.createElement("h1");
    title.textContent = "AM Knowledge Graph Assistant";
    header.appendChild(title);

    this.messages = document.createElement("main");
    this.messages.id = "messages";

    const form = document.createElement("form");
    form.id = "composer";
    this.input = document.createElement("input");
    this.input.type = "text";
    this.input.placeholder = "Ask about materials, processes, feedstock...";
    this.input.setAttribute("aria-label", "question");
    this.sendButton = document.createElement("button");
    this.sendButton.type = "submit";
    this.sendButton.textContent = "Send";
    this.sendButton.disabled = true;
    form.appendChild(this.input);
    form.appendChild(this.sendButton);

    this.statusLine = document.createElement("div");
    this.statusLine.id = "status-line";

    options.root.appendChild(header);
    options.root.appendChild(this.messages);
    options.root.appendChild(form);
    options.root.appendChild(this.statusLine);

    this.input.addEventListener("input", () => this.syncControls());
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.sendQuery(this.input.value);
    });
  }

  get sessionId(): string | null {
    return this.storage.getItem(SESSION_KEY);
  }

  private set sessionId(value: string | null) {
    if (value) this.storage.setItem(SESSION_KEY, value);
  }

  get inFlight(): boolean {
    return this.pending;
  }

  private syncControls(): void {
    const empty = this.input.value.trim().length === 0;
    this.sendButton.disabled = this.pending || empty;
    this.input.disabled = this.pending;
  }

  private append(element: HTMLElement): void {
    this.messages.appendChild(element);
    this.messages.scrollTop = this.messages.scrollHeight;
  }

  async start(): Promise<void> {
    this.units = await this.api.unitsByProperty();
    await this.loadHistory();
  }

  // restore the transcript for a stored session; unknown sessions are empty
  async loadHistory(): Promise<number> {
    const session = this.sessionId;
    if (!session) return 0;
    const entries = await this.api.history(session);
    for (const entry of entries) {
      this.append(renderBubble({ role: "user", text: entry.text }));
      this.append(
        renderBubble({
          role: "assistant",
          text: entry.answer_text,
          status: entry.status,
          error: entry.status === "error",
          panel:
            entry.status === "answered" && entry.cypher
              ? { cypher: entry.cypher, intent: entry.intent }
              : null,
          units: this.units,
        }),
      );
    }
    return entries.length;
  }

  // append the user bubble immediately, the assistant bubble on response;
  // the composer stays disabled while a query is in flight
  async sendQuery(text: string): Promise<QueryResponse | null> {
    const trimmed = text.trim();
    if (!trimmed || this.pending) return null;
    this.pending = true;
    this.input.value = "";
    this.syncControls();
    this.statusLine.textContent = "thinking...";
    this.append(renderBubble({ role: "user", text: trimmed }));
    try {
      const response = await this.api.query(trimmed, this.sessionId);
      this.sessionId = response.session_id;
      this.append(
        renderBubble({
          role: "assistant",
          text: response.answer_text,
          status: response.status,
          error: response.status === "error",
          panel:
            response.status === "answered" && response.cypher
              ? {
                  cypher: response.cypher,
                  columns: response.columns,
                  rows: response.rows,
                  intent: response.intent,
                }
              : null,
          units: this.units,
        }),
      );
      this.statusLine.textContent = `${response.intent} in ${response.elapsed_ms} ms`;
      return response;
    } catch (err) {
      // a transport failure is rendered as an error bubble, never an answer
      const reason = err instanceof ApiError ? err.message : String(err);
      this.append(
        renderBubble({
          role: "assistant",
          text: `Request failed: ${reason}`,
          error: true,
        }),
      );
      this.statusLine.textContent = "request failed";
      return null;
    } finally {
      this.pending = false;
      this.syncControls();
      this.input.focus();
    }
  }
}

export function createChatApp(options: ChatAppOptions): ChatApp {
  return new ChatApp(options);
}
