// DOM construction and repaint for the studio.
//
// One renderAll() repaints every dynamic region from the app context; at
// this scale that is cheaper to maintain than fine-grained updates.  Pointer
// gestures on the canvas (drag to move, drag between nodes to link) are
// wired in app.ts; everything clickable here goes through the Actions
// callbacks so render stays free of business logic.

import type { Client } from "./api.js";
import type { CompileDriver, EditorState, SolveDriver } from "./state.js";
import { totalSlots, wishAt } from "./state.js";
import type { NodeKind, WishMode } from "./types.js";
import { ALL_KINDS, isEventKind, isResourceKind } from "./types.js";

export const KIND_ICONS: Record<NodeKind, string> = {
  course: "\u{1F4D8}",
  lecture: "\u{1F4D6}",
  tutorial: "✏️",
  lab: "\u{1F9EA}",
  lecturer: "\u{1F9D1}‍\u{1F3EB}",
  teaching_assistant: "\u{1F6E0}️",
  study_group: "\u{1F465}",
};

export const KIND_LABELS: Record<NodeKind, string> = {
  course: "Course",
  lecture: "Lecture",
  tutorial: "Tutorial",
  lab: "Lab",
  lecturer: "Lecturer",
  teaching_assistant: "Teaching assistant",
  study_group: "Study group",
};

export type Tab = "draw" | "prefs" | "time";

export interface AppCtx {
  state: EditorState;
  client: Client;
  compile: CompileDriver;
  solve: SolveDriver;
  positions: Map<string, { x: number; y: number }>;
  tab: Tab;
  timeResource: string | null;
  timeMode: WishMode;
  solving: boolean;
  serverUp: boolean | null;
}

export interface Actions {
  addNode(kind: NodeKind): void;
  select(sel: string | null): void;
  deleteSelection(): void;
  rename(name: string): void;
  setLoad(load: number | null): void;
  setRoomOverride(roomType: string | null): void;
  setTab(tab: Tab): void;
  pickTimeResource(id: string | null): void;
  pickTimeMode(mode: WishMode): void;
  clickTimeCell(slot: number): void;
  applyGrid(days: number, slots: number): void;
  setRoom(name: string, count: number, capacity: number | null): void;
  toggleDayOff(resource: string): void;
  setBan(on: boolean): void;
  toggleBlocked(slot: number): void;
  solveNow(timeLimitMs: number, maxSolutions: number | null): void;
  abortSolve(): void;
  exportDoc(): void;
  importDoc(text: string): void;
  retry(): void;
  dismissNotice(): void;
}

type Child = Node | string;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: Child[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) {
    if (k === "class") node.className = v;
    else node.setAttribute(k, v);
  }
  node.append(...children);
  return node;
}

const SVG_NS = "http://www.w3.org/2000/svg";

function svgEl(tag: string, attrs: Record<string, string> = {}): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  return node;
}

export interface View {
  banner: HTMLElement;
  notice: HTMLElement;
  palette: HTMLElement;
  canvas: SVGSVGElement;
  status: HTMLElement;
  tabs: HTMLElement;
  panel: HTMLElement;
  codePane: HTMLElement;
  findings: HTMLElement;
  solveBar: HTMLElement;
  timetable: HTMLElement;
  filePick: HTMLInputElement;
}

export function buildUI(root: HTMLElement, actions: Actions): View {
  const banner = el("div", { class: "banner hidden" });
  const notice = el("div", { class: "notice hidden" });
  const palette = el("div", { class: "palette" });
  const canvas = document.createElementNS(SVG_NS, "svg") as SVGSVGElement;
  canvas.setAttribute("class", "canvas");
  const status = el("span", { class: "server-dot" });
  const tabs = el("div", { class: "tabs" });
  const panel = el("div", { class: "panel" });
  const codePane = el("pre", { class: "code-pane" });
  const findings = el("div", { class: "findings" });
  const solveBar = el("div", { class: "solve-bar" });
  const timetable = el("div", { class: "timetable" });
  const filePick = el("input", { type: "file", accept: ".json", class: "hidden" });

  filePick.addEventListener("change", () => {
    const file = filePick.files?.[0];
    if (!file) return;
    void file.text().then((text) => actions.importDoc(text));
    filePick.value = "";
  });

  const header = el(
    "div",
    { class: "header" },
    el("strong", {}, "Timetabling studio"),
    status,
    el("span", { class: "spacer" }),
  );
  const importBtn = el("button", {}, "Import");
  importBtn.addEventListener("click", () => filePick.click());
  const exportBtn = el("button", {}, "Export");
  exportBtn.addEventListener("click", () => actions.exportDoc());
  header.append(importBtn, exportBtn, filePick);

  const canvasWrap = el("div", { class: "canvas-wrap" }, palette, canvas);
  const legend = el(
    "div",
    { class: "legend" },
    "Shapes: resources are squares, events are circles, courses are diamonds. " +
      "Drag a node to move it; drag from one node onto another to link them.",
  );
  const lower = el(
    "div",
    { class: "lower" },
    el("div", { class: "left-col" }, tabs, panel),
    el("div", { class: "right-col" }, codePane, findings),
  );
  root.append(
    banner,
    header,
    notice,
    canvasWrap,
    legend,
    lower,
    solveBar,
    timetable,
  );
  return {
    banner,
    notice,
    palette,
    canvas,
    status,
    tabs,
    panel,
    codePane,
    findings,
    solveBar,
    timetable,
    filePick,
  };
}

// -- canvas ------------------------------------------------------------

function nodeShape(kind: NodeKind): SVGElement {
  if (isResourceKind(kind)) {
    return svgEl("rect", { x: "-26", y: "-20", width: "52", height: "40", rx: "6" });
  }
  if (isEventKind(kind)) {
    return svgEl("circle", { r: "24" });
  }
  return svgEl("rect", {
    x: "-20",
    y: "-20",
    width: "40",
    height: "40",
    transform: "rotate(45)",
  });
}

function renderCanvas(view: View, ctx: AppCtx): void {
  const { state, positions } = ctx;
  view.canvas.replaceChildren();
  for (let i = 0; i < state.document.links.length; i++) {
    const [a, b] = state.document.links[i];
    const pa = positions.get(a);
    const pb = positions.get(b);
    if (!pa || !pb) continue;
    const line = svgEl("line", {
      x1: String(pa.x),
      y1: String(pa.y),
      x2: String(pb.x),
      y2: String(pb.y),
      class: state.selection === `link:${i}` ? "link selected" : "link",
      "data-link": String(i),
    });
    view.canvas.append(line);
  }
  for (const node of state.document.nodes) {
    const pos = positions.get(node.id);
    if (!pos) continue;
    const g = svgEl("g", {
      transform: `translate(${pos.x}, ${pos.y})`,
      class: `node kind-${node.kind}${state.selection === node.id ? " selected" : ""}`,
      "data-id": node.id,
    });
    g.append(nodeShape(node.kind));
    const icon = svgEl("text", { class: "icon", y: "6", "text-anchor": "middle" });
    icon.textContent = KIND_ICONS[node.kind];
    const label = svgEl("text", { class: "label", y: "38", "text-anchor": "middle" });
    label.textContent = node.name;
    g.append(icon, label);
    view.canvas.append(g);
  }
}

function renderPalette(view: View, actions: Actions): void {
  view.palette.replaceChildren();
  for (const kind of ALL_KINDS) {
    const btn = el("button", { class: "pal-btn", title: `Add a ${KIND_LABELS[kind]}` });
    btn.append(`${KIND_ICONS[kind]} ${KIND_LABELS[kind]}`);
    btn.addEventListener("click", () => actions.addNode(kind));
    view.palette.append(btn);
  }
}

// -- tabs and panel ----------------------------------------------------

const TAB_LABELS: Record<Tab, string> = {
  draw: "Draw",
  prefs: "Preferences",
  time: "Time",
};

function renderTabs(view: View, ctx: AppCtx, actions: Actions): void {
  view.tabs.replaceChildren();
  for (const tab of ["draw", "prefs", "time"] as Tab[]) {
    const btn = el("button", { class: ctx.tab === tab ? "tab active" : "tab" });
    btn.append(TAB_LABELS[tab]);
    btn.addEventListener("click", () => actions.setTab(tab));
    view.tabs.append(btn);
  }
}

function renderDrawPanel(panel: HTMLElement, ctx: AppCtx, actions: Actions): void {
  const { state } = ctx;
  const sel = state.selection;
  if (sel === null) {
    panel.append(el("p", { class: "hint" }, "Select a node or a link to edit it."));
    return;
  }
  if (sel.startsWith("link:")) {
    const index = Number(sel.slice(5));
    const pair = state.document.links[index];
    if (!pair) return;
    const [a, b] = pair;
    const nameOf = (id: string) =>
      state.document.nodes.find((n) => n.id === id)?.name ?? id;
    panel.append(el("p", {}, `Link: ${nameOf(a)} ↔ ${nameOf(b)}`));
    const drop = el("button", { class: "danger" }, "Delete link");
    drop.addEventListener("click", () => actions.deleteSelection());
    panel.append(drop);
    return;
  }
  const node = state.document.nodes.find((n) => n.id === sel);
  if (!node) return;
  panel.append(
    el("p", {}, `${KIND_ICONS[node.kind]} ${KIND_LABELS[node.kind]} (${node.id})`),
  );

  const nameRow = el("label", {}, "Name ");
  const nameBox = el("input", { type: "text", value: node.name });
  nameBox.addEventListener("change", () => actions.rename(nameBox.value));
  nameRow.append(nameBox);
  panel.append(nameRow);

  if (node.kind === "lecturer" || node.kind === "teaching_assistant") {
    const loadRow = el("label", {}, "Teaching load ");
    const loadBox = el("input", {
      type: "number",
      min: "0",
      value: node.teaching_load?.toString() ?? "",
      placeholder: "unlimited",
    });
    loadBox.addEventListener("change", () => {
      actions.setLoad(loadBox.value === "" ? null : Number(loadBox.value));
    });
    loadRow.append(loadBox);
    panel.append(loadRow);
  }

  if (isEventKind(node.kind)) {
    const roomRow = el("label", {}, "Room type ");
    const roomBox = el("input", {
      type: "text",
      value: node.room_type ?? "",
      placeholder: "default for kind",
    });
    roomBox.addEventListener("change", () => {
      actions.setRoomOverride(roomBox.value === "" ? null : roomBox.value);
    });
    roomRow.append(roomBox);
    panel.append(roomRow);
  }

  const drop = el("button", { class: "danger" }, "Delete node");
  drop.addEventListener("click", () => actions.deleteSelection());
  panel.append(drop);
}

function slotTable(
  ctx: AppCtx,
  cellClass: (slot: number) => string,
  onClick: (slot: number) => void,
): HTMLElement {
  const tg = ctx.state.document.time_grid;
  const table = el("table", { class: "slot-table" });
  const head = el("tr", {}, el("th", {}));
  for (const day of tg.day_names) head.append(el("th", {}, day.slice(0, 3)));
  table.append(head);
  for (let s = 0; s < tg.slots_per_day; s++) {
    const row = el("tr", {}, el("th", {}, String(s + 1)));
    for (let d = 0; d < tg.days; d++) {
      const slot = d * tg.slots_per_day + s;
      const cell = el("td", { class: cellClass(slot), "data-slot": String(slot) });
      cell.addEventListener("click", () => onClick(slot));
      row.append(cell);
    }
    table.append(row);
  }
  return table;
}

function renderPrefsPanel(panel: HTMLElement, ctx: AppCtx, actions: Actions): void {
  const doc = ctx.state.document;

  const gridForm = el("div", { class: "row" }, "Week: ");
  const daysBox = el("input", { type: "number", min: "1", value: String(doc.time_grid.days) });
  const slotsBox = el("input", {
    type: "number",
    min: "1",
    value: String(doc.time_grid.slots_per_day),
  });
  const applyBtn = el("button", {}, "Apply");
  applyBtn.addEventListener("click", () => {
    actions.applyGrid(Number(daysBox.value), Number(slotsBox.value));
  });
  gridForm.append(daysBox, " days × ", slotsBox, " slots ", applyBtn);
  panel.append(gridForm);

  const roomHead = el("p", { class: "section" }, "Room types");
  panel.append(roomHead);
  for (const room of doc.room_types) {
    panel.append(
      el(
        "p",
        { class: "room-row" },
        `${room.name}: ${room.count} rooms` +
          (room.capacity !== undefined ? `, capacity ${room.capacity}` : ""),
      ),
    );
  }
  const roomForm = el("div", { class: "row" });
  const roomName = el("input", { type: "text", placeholder: "name" });
  const roomCount = el("input", { type: "number", min: "0", placeholder: "count" });
  const roomCap = el("input", { type: "number", min: "1", placeholder: "capacity" });
  const roomBtn = el("button", {}, "Set room");
  roomBtn.addEventListener("click", () => {
    if (roomName.value === "" || roomCount.value === "") return;
    actions.setRoom(
      roomName.value,
      Number(roomCount.value),
      roomCap.value === "" ? null : Number(roomCap.value),
    );
  });
  roomForm.append(roomName, roomCount, roomCap, roomBtn);
  panel.append(roomForm);

  const banRow = el("label", { class: "row" });
  const banBox = el("input", { type: "checkbox" });
  banBox.checked = doc.policies.full_day_ban;
  banBox.addEventListener("change", () => actions.setBan(banBox.checked));
  banRow.append(banBox, " study groups never get first and last slot of a day");
  panel.append(banRow);

  panel.append(el("p", { class: "section" }, "Extra day off"));
  for (const node of doc.nodes.filter((n) => isResourceKind(n.kind))) {
    const row = el("label", { class: "row" });
    const box = el("input", { type: "checkbox" });
    box.checked = doc.policies.extra_day_off.includes(node.id);
    box.addEventListener("change", () => actions.toggleDayOff(node.id));
    row.append(box, ` ${node.name}`);
    panel.append(row);
  }

  panel.append(el("p", { class: "section" }, "Blocked slots (whole department)"));
  panel.append(
    slotTable(
      ctx,
      (slot) =>
        doc.policies.global_blocked_slots.includes(slot) ? "cell blocked" : "cell",
      (slot) => actions.toggleBlocked(slot),
    ),
  );
}

function renderTimePanel(panel: HTMLElement, ctx: AppCtx, actions: Actions): void {
  const doc = ctx.state.document;
  const resources = doc.nodes.filter((n) => isResourceKind(n.kind));
  if (resources.length === 0) {
    panel.append(el("p", { class: "hint" }, "Add a resource node first."));
    return;
  }
  const picked =
    ctx.timeResource !== null && resources.some((n) => n.id === ctx.timeResource)
      ? ctx.timeResource
      : resources[0].id;
  if (picked !== ctx.timeResource) ctx.timeResource = picked;

  const pickRow = el("div", { class: "row" }, "Resource: ");
  const select = el("select", {});
  for (const node of resources) {
    const opt = el("option", { value: node.id }, `${KIND_ICONS[node.kind]} ${node.name}`);
    if (node.id === picked) opt.setAttribute("selected", "selected");
    select.append(opt);
  }
  select.addEventListener("change", () => actions.pickTimeResource(select.value));
  pickRow.append(select);

  for (const mode of ["soft", "hard"] as WishMode[]) {
    const lab = el("label", { class: "mode" });
    const radio = el("input", { type: "radio", name: "wish-mode", value: mode });
    if (ctx.timeMode === mode) radio.setAttribute("checked", "checked");
    radio.addEventListener("change", () => actions.pickTimeMode(mode));
    lab.append(radio, ` ${mode}`);
    pickRow.append(lab);
  }
  panel.append(pickRow);
  panel.append(
    el(
      "p",
      { class: "hint" },
      "Click a cell to keep that slot free; soft wishes are maximized, hard ones always hold.",
    ),
  );
  panel.append(
    slotTable(
      ctx,
      (slot) => {
        const mode = wishAt(doc, picked, slot);
        return mode === null ? "cell" : `cell wish-${mode}`;
      },
      (slot) => actions.clickTimeCell(slot),
    ),
  );
}

// -- code pane, solve bar, timetable -----------------------------------

function renderCode(view: View, ctx: AppCtx): void {
  const { state } = ctx;
  view.codePane.textContent =
    state.lastProgram !== ""
      ? state.lastProgram
      : state.lastFindings.some((f) => f.severity === "error")
        ? "(static analysis failed, see findings)"
        : "(no program yet)";
  view.codePane.classList.toggle("stale", state.dirty);

  view.findings.replaceChildren();
  for (const f of state.lastFindings) {
    view.findings.append(
      el(
        "p",
        { class: `finding ${f.severity}` },
        el("span", { class: "badge" }, f.severity),
        ` ${f.code} on ${f.node}: ${f.message}`,
      ),
    );
  }
}

function renderSolveBar(view: View, ctx: AppCtx, actions: Actions): void {
  view.solveBar.replaceChildren();
  const limitBox = el("input", { type: "number", min: "1", value: "5000" });
  const countBox = el("input", { type: "number", min: "1", placeholder: "best only" });
  const solveBtn = el("button", { class: "primary" }, "Solve");
  solveBtn.addEventListener("click", () => {
    actions.solveNow(
      Number(limitBox.value) || 5000,
      countBox.value === "" ? null : Number(countBox.value),
    );
  });
  const abortBtn = el("button", {}, "Abort");
  abortBtn.addEventListener("click", () => actions.abortSolve());
  if (!ctx.solving) abortBtn.setAttribute("disabled", "disabled");
  view.solveBar.append("Time limit (ms) ", limitBox, " solutions ", countBox, solveBtn, abortBtn);
  if (ctx.solving) view.solveBar.append(el("span", { class: "spinner" }));
  const reply = ctx.state.lastSolve;
  if (reply && !ctx.solving) {
    const best = reply.solutions[0];
    const summary =
      `${reply.status}` +
      (best ? `, score ${best.score}` : "") +
      `, ${reply.stats.elapsed.toFixed(2)}s, ${reply.stats.nodes_explored} nodes`;
    view.solveBar.append(el("span", { class: "solve-status" }, summary));
  }
}

function renderTimetable(view: View, ctx: AppCtx): void {
  view.timetable.replaceChildren();
  const reply = ctx.state.lastSolve;
  if (!reply || reply.grids.length === 0) return;
  const tg = ctx.state.document.time_grid;
  for (const grid of reply.grids) {
    const table = el("table", { class: "week" });
    const head = el("tr", {}, el("th", {}));
    for (const day of tg.day_names) head.append(el("th", {}, day));
    table.append(head);
    for (let s = 0; s < tg.slots_per_day; s++) {
      const row = el("tr", {}, el("th", {}, String(s + 1)));
      for (let d = 0; d < tg.days; d++) {
        const names = grid.cells[d]?.[s] ?? [];
        row.append(el("td", { class: names.length > 1 ? "clash" : "" }, names.join(" / ")));
      }
      table.append(row);
    }
    view.timetable.append(el("h4", {}, grid.resource), table);
  }
}

// -- top level ---------------------------------------------------------

export function renderAll(view: View, ctx: AppCtx, actions: Actions): void {
  const { state } = ctx;

  view.banner.classList.toggle("hidden", state.banner === null);
  if (state.banner !== null) {
    view.banner.replaceChildren(state.banner + " ");
    const retry = el("button", {}, "Retry");
    retry.addEventListener("click", () => actions.retry());
    view.banner.append(retry);
  }

  view.notice.classList.toggle("hidden", state.notice === null);
  if (state.notice !== null) {
    view.notice.replaceChildren(state.notice + " ");
    const ok = el("button", {}, "×");
    ok.addEventListener("click", () => actions.dismissNotice());
    view.notice.append(ok);
  }

  view.status.className =
    ctx.serverUp === null ? "server-dot" : ctx.serverUp ? "server-dot up" : "server-dot down";
  view.status.title =
    ctx.serverUp === null ? "checking server" : ctx.serverUp ? "server ok" : "server unreachable";

  renderPalette(view, actions);
  renderCanvas(view, ctx);
  renderTabs(view, ctx, actions);
  view.panel.replaceChildren();
  if (ctx.tab === "draw") renderDrawPanel(view.panel, ctx, actions);
  else if (ctx.tab === "prefs") renderPrefsPanel(view.panel, ctx, actions);
  else renderTimePanel(view.panel, ctx, actions);
  renderCode(view, ctx);
  renderSolveBar(view, ctx, actions);
  renderTimetable(view, ctx);
}

export function nextPosition(ctx: AppCtx): { x: number; y: number } {
  const k = ctx.positions.size;
  return { x: 70 + (k % 6) * 130, y: 60 + Math.floor(k / 6) * 100 };
}

export function slotCount(ctx: AppCtx): number {
  return totalSlots(ctx.state.document);
}
