// Local mirror of the server's link legality check.
//
// The canvas uses it for instant hover feedback while a drag is in progress.
// The server endpoint stays the source of truth: every finished drag is still
// submitted, and if the two ever disagree the server's verdict wins.

import type { GraphDocument, GraphNode, NodeKind } from "./types.js";
import { isEventKind } from "./types.js";

function pairKey(a: NodeKind, b: NodeKind): string {
  return [a, b].sort().join("|");
}

const LEGAL_PAIRS: ReadonlySet<string> = new Set(
  (
    [
      ["course", "lecture"],
      ["course", "tutorial"],
      ["course", "lab"],
      ["lecturer", "lecture"],
      ["teaching_assistant", "tutorial"],
      ["teaching_assistant", "lab"],
      ["study_group", "lecture"],
      ["study_group", "tutorial"],
      ["study_group", "lab"],
    ] as [NodeKind, NodeKind][]
  ).map(([a, b]) => pairKey(a, b)),
);

// each event kind takes exactly one of this resource kind
const REQUIRED_RESOURCE: Record<string, NodeKind> = {
  lecture: "lecturer",
  tutorial: "teaching_assistant",
  lab: "teaching_assistant",
};

export function legalKinds(a: NodeKind, b: NodeKind): boolean {
  return LEGAL_PAIRS.has(pairKey(a, b));
}

function neighborsOfKind(
  doc: GraphDocument,
  byId: Map<string, GraphNode>,
  nodeId: string,
  kind: NodeKind,
): number {
  let count = 0;
  for (const [x, y] of doc.links) {
    const other = x === nodeId ? y : y === nodeId ? x : null;
    if (other !== null && byId.get(other)?.kind === kind) count += 1;
  }
  return count;
}

/**
 * Predict the verdict for linking a and b: null when the link would be
 * accepted, otherwise the rejection code the server would answer with.
 * Checks run in the same order the server applies them.
 */
export function checkLinkLocal(doc: GraphDocument, a: string, b: string): string | null {
  const byId = new Map(doc.nodes.map((n) => [n.id, n]));
  const na = byId.get(a);
  const nb = byId.get(b);
  if (!na || !nb) return "UnknownNode";
  if (a === b) return "SelfLink";
  if (!legalKinds(na.kind, nb.kind)) return "KindForbidden";
  if (doc.links.some(([x, y]) => (x === a && y === b) || (x === b && y === a))) {
    return "DuplicateLink";
  }
  const [ev, other] = isEventKind(na.kind) ? [na, nb] : [nb, na];
  if (other.kind === "course" && neighborsOfKind(doc, byId, ev.id, "course") > 0) {
    return "DuplicateCourse";
  }
  if (
    other.kind === REQUIRED_RESOURCE[ev.kind] &&
    neighborsOfKind(doc, byId, ev.id, other.kind) > 0
  ) {
    return "DuplicateResource";
  }
  if (
    other.kind === "study_group" &&
    (ev.kind === "tutorial" || ev.kind === "lab") &&
    neighborsOfKind(doc, byId, ev.id, "study_group") > 0
  ) {
    return "DuplicateGroup";
  }
  return null;
}
