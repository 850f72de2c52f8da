// Editor state and the transitions the panes trigger.
//
// The document is the single source of truth; everything else in EditorState
// is either derived from it (code pane contents) or transient view state
// (selection, notices).  Mutations go through the helpers here so the dirty
// flag and the derived fields stay honest.

import { ApiError, compileGraph, solveGraph, validateLink } from "./api.js";
import type { Client, SolveOptions } from "./api.js";
import type {
  Finding,
  GraphDocument,
  GraphNode,
  NodeKind,
  SolveReply,
  WishMode,
} from "./types.js";
import { isResourceKind } from "./types.js";

export interface EditorState {
  document: GraphDocument;
  selection: string | null;
  // document changed since the code pane last caught up
  dirty: boolean;
  lastProgram: string;
  lastFindings: Finding[];
  lastSolve: SolveReply | null;
  // transient rejection reason shown near the canvas
  notice: string | null;
  // sticky connectivity warning offering a retry
  banner: string | null;
}

const WEEK = ["Saturday", "Sunday", "Monday", "Tuesday", "Wednesday", "Thursday"];

export function dayNames(days: number): string[] {
  return Array.from({ length: days }, (_, i) => WEEK[i] ?? `Day${i + 1}`);
}

export function emptyDocument(days = 6, slotsPerDay = 5): GraphDocument {
  return {
    time_grid: { days, slots_per_day: slotsPerDay, day_names: dayNames(days) },
    room_types: [],
    nodes: [],
    links: [],
    policies: { global_blocked_slots: [], extra_day_off: [], full_day_ban: false },
    wishes: [],
    precedences: [],
  };
}

export function newState(): EditorState {
  return {
    document: emptyDocument(),
    selection: null,
    dirty: false,
    lastProgram: "",
    lastFindings: [],
    lastSolve: null,
    notice: null,
    banner: null,
  };
}

export function totalSlots(doc: GraphDocument): number {
  return doc.time_grid.days * doc.time_grid.slots_per_day;
}

export function nodeById(doc: GraphDocument, id: string): GraphNode | undefined {
  return doc.nodes.find((n) => n.id === id);
}

function freshId(doc: GraphDocument): string {
  const used = new Set(doc.nodes.map((n) => n.id));
  let k = 1;
  while (used.has(`n${k}`)) k += 1;
  return `n${k}`;
}

export function addNode(state: EditorState, kind: NodeKind, name: string): string {
  const id = freshId(state.document);
  state.document.nodes.push({ id, kind, name });
  state.dirty = true;
  return id;
}

export function removeNode(state: EditorState, id: string): void {
  const doc = state.document;
  doc.nodes = doc.nodes.filter((n) => n.id !== id);
  doc.links = doc.links.filter(([a, b]) => a !== id && b !== id);
  doc.wishes = doc.wishes.filter((w) => w.resource !== id);
  doc.policies.extra_day_off = doc.policies.extra_day_off.filter((r) => r !== id);
  if (state.selection === id) state.selection = null;
  state.dirty = true;
}

export function renameNode(state: EditorState, id: string, name: string): void {
  const node = nodeById(state.document, id);
  if (!node) throw new Error(`no node ${id}`);
  node.name = name;
  state.dirty = true;
}

export function setTeachingLoad(state: EditorState, id: string, load: number | null): void {
  const node = nodeById(state.document, id);
  if (!node) throw new Error(`no node ${id}`);
  if (load === null) delete node.teaching_load;
  else node.teaching_load = load;
  state.dirty = true;
}

export function setRoomTypeOverride(state: EditorState, id: string, roomType: string | null): void {
  const node = nodeById(state.document, id);
  if (!node) throw new Error(`no node ${id}`);
  if (roomType === null || roomType === "") delete node.room_type;
  else node.room_type = roomType;
  state.dirty = true;
}

// -- link attempts -----------------------------------------------------

/**
 * Ask the server whether the edge is legal and add it only on a yes.
 * Rejections leave the document alone and surface the reason as a transient
 * notice; network trouble raises the retry banner and changes nothing.
 */
export async function attemptLink(
  state: EditorState,
  client: Client,
  a: string,
  b: string,
): Promise<boolean> {
  let verdict;
  try {
    verdict = await validateLink(client, state.document, a, b);
  } catch (err) {
    if (err instanceof ApiError) {
      // the server refused the request itself (unknown id, bad document)
      state.notice = err.body.code;
      return false;
    }
    state.banner = "link check unreachable, edge not added";
    return false;
  }
  state.banner = null;
  if (!verdict.accepted) {
    state.notice = verdict.reason ?? "rejected";
    return false;
  }
  state.document.links.push([a, b]);
  state.dirty = true;
  state.notice = null;
  return true;
}

// -- wishes ------------------------------------------------------------

/**
 * Toggle the wish for one cell of a resource's weekly grid.  A second click
 * with the same mode clears the cell; a click with the other mode replaces
 * the stored wish.
 */
export function toggleSlot(
  state: EditorState,
  resource: string,
  slot: number,
  mode: WishMode,
): void {
  const doc = state.document;
  const node = nodeById(doc, resource);
  if (!node || !isResourceKind(node.kind)) {
    throw new Error(`${resource} is not a resource node`);
  }
  const total = totalSlots(doc);
  if (!Number.isInteger(slot) || slot < 0 || slot >= total) {
    throw new RangeError(`slot ${slot} outside [0, ${total})`);
  }
  const at = doc.wishes.findIndex((w) => w.resource === resource && w.slot === slot);
  if (at >= 0 && doc.wishes[at].mode === mode) {
    doc.wishes.splice(at, 1);
  } else if (at >= 0) {
    doc.wishes[at] = { resource, slot, mode };
  } else {
    doc.wishes.push({ resource, slot, mode });
  }
  state.dirty = true;
}

export function wishAt(doc: GraphDocument, resource: string, slot: number): WishMode | null {
  const w = doc.wishes.find((x) => x.resource === resource && x.slot === slot);
  return w ? w.mode : null;
}

// -- preferences -------------------------------------------------------

export function setGrid(state: EditorState, days: number, slotsPerDay: number): void {
  if (days < 1 || slotsPerDay < 1) throw new RangeError("grid dimensions must be positive");
  const doc = state.document;
  doc.time_grid = { days, slots_per_day: slotsPerDay, day_names: dayNames(days) };
  const total = days * slotsPerDay;
  // wishes and blocks beyond the new horizon would fail the parser
  doc.wishes = doc.wishes.filter((w) => w.slot < total);
  doc.policies.global_blocked_slots = doc.policies.global_blocked_slots.filter(
    (s) => s < total,
  );
  state.dirty = true;
}

export function setRoom(
  state: EditorState,
  name: string,
  count: number,
  capacity?: number,
): void {
  const rooms = state.document.room_types;
  const entry: { name: string; count: number; capacity?: number } = { name, count };
  if (capacity !== undefined) entry.capacity = capacity;
  const at = rooms.findIndex((r) => r.name === name);
  if (at >= 0) rooms[at] = entry;
  else rooms.push(entry);
  state.dirty = true;
}

export function toggleDayOff(state: EditorState, resource: string): void {
  const node = nodeById(state.document, resource);
  if (!node || !isResourceKind(node.kind)) {
    throw new Error(`${resource} is not a resource node`);
  }
  const flagged = state.document.policies.extra_day_off;
  const at = flagged.indexOf(resource);
  if (at >= 0) flagged.splice(at, 1);
  else flagged.push(resource);
  state.dirty = true;
}

export function setFullDayBan(state: EditorState, on: boolean): void {
  state.document.policies.full_day_ban = on;
  state.dirty = true;
}

export function toggleBlockedSlot(state: EditorState, slot: number): void {
  const total = totalSlots(state.document);
  if (!Number.isInteger(slot) || slot < 0 || slot >= total) {
    throw new RangeError(`slot ${slot} outside [0, ${total})`);
  }
  const blocked = state.document.policies.global_blocked_slots;
  const at = blocked.indexOf(slot);
  if (at >= 0) blocked.splice(at, 1);
  else blocked.push(slot);
  state.dirty = true;
}

// -- code pane ---------------------------------------------------------

export interface CompileDriver {
  timer: ReturnType<typeof setTimeout> | null;
  inflight: AbortController | null;
  delayMs: number;
}

export function newCompileDriver(delayMs = 250): CompileDriver {
  return { timer: null, inflight: null, delayMs };
}

/** Debounced refresh: bursts of edits collapse into one compile request. */
export function scheduleRefresh(
  state: EditorState,
  client: Client,
  driver: CompileDriver,
  onDone?: () => void,
): void {
  if (driver.timer !== null) clearTimeout(driver.timer);
  driver.timer = setTimeout(() => {
    driver.timer = null;
    void refreshCodePane(state, client, driver).then(onDone);
  }, driver.delayMs);
}

/**
 * Compile the current document and mirror the reply into the code pane
 * fields.  A newer call aborts this one; a 422 swaps the program text for
 * the findings that explain it.
 */
export async function refreshCodePane(
  state: EditorState,
  client: Client,
  driver?: CompileDriver,
): Promise<void> {
  driver?.inflight?.abort();
  const ctrl = new AbortController();
  if (driver) driver.inflight = ctrl;
  try {
    const reply = await compileGraph(client, state.document, ctrl.signal);
    state.lastProgram = reply.program;
    state.lastFindings = reply.findings;
    state.dirty = false;
    state.banner = null;
  } catch (err) {
    if (ctrl.signal.aborted) return;
    if (err instanceof ApiError && err.status === 422) {
      state.lastProgram = "";
      state.lastFindings = err.body.findings ?? [];
      state.dirty = false;
      state.banner = null;
      return;
    }
    state.banner = "compile unreachable, code pane is stale";
  } finally {
    if (driver && driver.inflight === ctrl) driver.inflight = null;
  }
}

// -- solving -----------------------------------------------------------

export interface SolveDriver {
  inflight: AbortController | null;
}

export function newSolveDriver(): SolveDriver {
  return { inflight: null };
}

export async function runSolve(
  state: EditorState,
  client: Client,
  opts: SolveOptions = {},
  driver?: SolveDriver,
): Promise<SolveReply | null> {
  driver?.inflight?.abort();
  const ctrl = new AbortController();
  if (driver) driver.inflight = ctrl;
  try {
    const reply = await solveGraph(client, state.document, opts, ctrl.signal);
    state.lastSolve = reply;
    state.banner = null;
    return reply;
  } catch (err) {
    if (ctrl.signal.aborted) return null;
    if (err instanceof ApiError) {
      state.notice = `${err.body.code}: ${err.body.message}`;
      return null;
    }
    state.banner = "solve unreachable, retry";
    return null;
  } finally {
    if (driver && driver.inflight === ctrl) driver.inflight = null;
  }
}

export function abortSolve(driver: SolveDriver): void {
  driver.inflight?.abort();
  driver.inflight = null;
}

// -- import / export ---------------------------------------------------

export function exportDocument(state: EditorState): string {
  return JSON.stringify(state.document, null, 2) + "\n";
}

export function importDocument(state: EditorState, text: string): void {
  const raw: unknown = JSON.parse(text);
  if (typeof raw !== "object" || raw === null) {
    throw new Error("not a graph document");
  }
  const doc = raw as Partial<GraphDocument>;
  if (!Array.isArray(doc.nodes) || !Array.isArray(doc.links)) {
    throw new Error("not a graph document");
  }
  const base = emptyDocument();
  state.document = {
    time_grid: doc.time_grid ?? base.time_grid,
    room_types: doc.room_types ?? [],
    nodes: doc.nodes,
    links: doc.links,
    policies: doc.policies ?? base.policies,
    wishes: doc.wishes ?? [],
    precedences: doc.precedences ?? [],
  };
  state.selection = null;
  state.lastSolve = null;
  state.dirty = true;
}
