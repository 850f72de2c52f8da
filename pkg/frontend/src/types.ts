// Wire shapes shared with the timetabling service.  The document layout here
// mirrors the canonical JSON format the core parser reads and writes; keep
// field names in sync with it.

export type ResourceKind = "lecturer" | "teaching_assistant" | "study_group";
export type EventKind = "lecture" | "tutorial" | "lab";
export type NodeKind = ResourceKind | EventKind | "course";

export const RESOURCE_KINDS: readonly ResourceKind[] = [
  "lecturer",
  "teaching_assistant",
  "study_group",
];
export const EVENT_KINDS: readonly EventKind[] = ["lecture", "tutorial", "lab"];
export const ALL_KINDS: readonly NodeKind[] = [
  "course",
  "lecture",
  "tutorial",
  "lab",
  "lecturer",
  "teaching_assistant",
  "study_group",
];

export interface GraphNode {
  id: string;
  kind: NodeKind;
  name: string;
  room_type?: string;
  teaching_load?: number;
}

export interface TimeGridDoc {
  days: number;
  slots_per_day: number;
  day_names: string[];
}

export interface RoomTypeDoc {
  name: string;
  count: number;
  capacity?: number;
}

export type WishMode = "soft" | "hard";

export interface Wish {
  resource: string;
  slot: number;
  mode: WishMode;
}

export interface Precedence {
  before: string;
  after: string;
  strict: boolean;
}

export interface Policies {
  global_blocked_slots: number[];
  extra_day_off: string[];
  full_day_ban: boolean;
}

export interface GraphDocument {
  time_grid: TimeGridDoc;
  room_types: RoomTypeDoc[];
  nodes: GraphNode[];
  links: [string, string][];
  policies: Policies;
  wishes: Wish[];
  precedences: Precedence[];
}

// -- replies -----------------------------------------------------------

export interface ValidateLinkReply {
  accepted: boolean;
  reason?: string;
}

export interface Finding {
  severity: "error" | "warning";
  code: string;
  node: string;
  message: string;
}

export interface CompileStats {
  vars: number;
  constraints: number;
  flags: number;
}

export interface CompileReply {
  program: string;
  findings: Finding[];
  stats: CompileStats;
}

export type SolveStatus = "optimal" | "feasible" | "unsat" | "timeout";

export interface Solution {
  assignment: Record<string, number>;
  score: number;
}

export interface ResourceGrid {
  resource: string;
  // cells[day][slot] lists the event names running there
  cells: string[][][];
}

export interface SolveStats {
  nodes_explored: number;
  failures: number;
  elapsed: number;
  proven_optimal: boolean;
}

export interface SolveReply {
  status: SolveStatus;
  solutions: Solution[];
  grids: ResourceGrid[];
  stats: SolveStats;
}

export interface ErrorBody {
  code: string;
  message: string;
  findings?: Finding[];
}

export function isResourceKind(kind: NodeKind): kind is ResourceKind {
  return (RESOURCE_KINDS as readonly string[]).includes(kind);
}

export function isEventKind(kind: NodeKind): kind is EventKind {
  return (EVENT_KINDS as readonly string[]).includes(kind);
}
