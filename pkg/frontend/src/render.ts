// DOM rendering for chat bubbles, answer text, and result tables.

import type { Cell } from "./api.js";

// bullet lines ("- Name") become a list; anything else renders as lines
export function renderAnswerText(text: string): HTMLElement {
  const lines = text.split("\n");
  if (lines.length > 0 && lines.every((line) => line.startsWith("- "))) {
    const list = document.createElement("ul");
    list.className = "answer-list";
    for (const line of lines) {
      const item = document.createElement("li");
      item.textContent = line.slice(2);
      list.appendChild(item);
    }
    return list;
  }
  const block = document.createElement("div");
  block.className = "answer-text";
  for (const line of lines) {
    const para = document.createElement("div");
    para.textContent = line;
    block.appendChild(para);
  }
  return block;
}

// "p.build_z_mm" with units {build_z_mm: "mm"} -> "build_z_mm (mm)"
export function columnHeader(column: string, units: Record<string, string>): string {
  const dot = column.indexOf(".");
  const prop = dot >= 0 && !column.includes(" ") ? column.slice(dot + 1) : column;
  const unit = units[prop];
  return unit ? `${prop} (${unit})` : prop;
}

function cellText(cell: Cell): string {
  if (cell === null) return "-";
  if (Array.isArray(cell)) return cell.join(", ");
  return String(cell);
}

export function renderTable(
  columns: string[],
  rows: Cell[][],
  units: Record<string, string>,
): HTMLTableElement {
  const table = document.createElement("table");
  table.className = "result-table";
  const head = table.createTHead().insertRow();
  for (const column of columns) {
    const cell = document.createElement("th");
    cell.textContent = columnHeader(column, units);
    head.appendChild(cell);
  }
  const body = table.createTBody();
  for (const row of rows) {
    const tr = body.insertRow();
    for (const cell of row) {
      tr.insertCell().textContent = cellText(cell);
    }
  }
  return table;
}

export interface PanelContent {
  cypher: string;
  columns?: string[];
  rows?: Cell[][];
  intent?: string;
}

// collapsed-by-default panel showing the generated query and its table
export function renderCypherPanel(
  content: PanelContent,
  units: Record<string, string>,
): HTMLElement {
  const wrapper = document.createElement("div");
  wrapper.className = "cypher-panel";

  const toggle = document.createElement("button");
  toggle.type = "button";
  toggle.className = "cypher-toggle";
  toggle.textContent = "Show Cypher";

  const details = document.createElement("div");
  details.className = "cypher-details";
  details.hidden = true;

  if (content.intent) {
    const intent = document.createElement("div");
    intent.className = "intent-label";
    intent.textContent = content.intent;
    details.appendChild(intent);
  }
  const code = document.createElement("pre");
  code.className = "cypher-code";
  const inner = document.createElement("code");
  inner.textContent = content.cypher;
  code.appendChild(inner);
  details.appendChild(code);
  if (content.columns && content.columns.length > 0 && content.rows) {
    details.appendChild(renderTable(content.columns, content.rows, units));
  }

  toggle.addEventListener("click", () => {
    details.hidden = !details.hidden;
    toggle.textContent = details.hidden ? "Show Cypher" : "Hide Cypher";
  });

  wrapper.appendChild(toggle);
  wrapper.appendChild(details);
  return wrapper;
}

export interface BubbleOptions {
  role: "user" | "assistant";
  text: string;
  status?: string;
  error?: boolean;
  panel?: PanelContent | null;
  units?: Record<string, string>;
}

export function renderBubble(options: BubbleOptions): HTMLElement {
  const bubble = document.createElement("div");
  bubble.className = `bubble ${options.role}`;
  if (options.status) bubble.classList.add(`status-${options.status}`);
  if (options.error) bubble.classList.add("error");
  bubble.appendChild(renderAnswerText(options.text));
  if (options.panel && options.panel.cypher) {
    bubble.appendChild(renderCypherPanel(options.panel, options.units ?? {}));
  }
  return bubble;
}
