// Bootstrap and event wiring for the studio page.
//
// Everything runs on the single browser event loop.  Edits mutate the state
// through helpers in state.ts, then schedule one debounced compile and a
// repaint; the canvas gestures (move, link-drag) are handled here directly
// on the SVG element.

import { createClient, health } from "./api.js";
import { checkLinkLocal } from "./rules.js";
import {
  abortSolve,
  addNode,
  attemptLink,
  exportDocument,
  importDocument,
  newCompileDriver,
  newSolveDriver,
  newState,
  refreshCodePane,
  removeNode,
  renameNode,
  runSolve,
  scheduleRefresh,
  setFullDayBan,
  setGrid,
  setRoom,
  setRoomTypeOverride,
  setTeachingLoad,
  toggleBlockedSlot,
  toggleDayOff,
  toggleSlot,
} from "./state.js";
import type { AppCtx, Actions, View } from "./render.js";
import { buildUI, renderAll, nextPosition, KIND_LABELS } from "./render.js";
import type { NodeKind, WishMode } from "./types.js";

function apiBase(): string {
  // same origin by default; ?api=http://host:port overrides for dev setups
  const override = new URLSearchParams(location.search).get("api");
  return override ?? "";
}

function main(): void {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app element");

  const ctx: AppCtx = {
    state: newState(),
    client: createClient(apiBase()),
    compile: newCompileDriver(),
    solve: newSolveDriver(),
    positions: new Map(),
    tab: "draw",
    timeResource: null,
    timeMode: "soft",
    solving: false,
    serverUp: null,
  };

  let view: View;
  let noticeTimer: ReturnType<typeof setTimeout> | null = null;

  const repaint = () => renderAll(view, ctx, actions);

  const afterEdit = () => {
    scheduleRefresh(ctx.state, ctx.client, ctx.compile, repaint);
    repaint();
  };

  const showNoticeBriefly = () => {
    if (noticeTimer !== null) clearTimeout(noticeTimer);
    noticeTimer = setTimeout(() => {
      ctx.state.notice = null;
      repaint();
    }, 3000);
  };

  const kindCounters = new Map<string, number>();
  const defaultName = (kind: NodeKind): string => {
    const n = (kindCounters.get(kind) ?? 0) + 1;
    kindCounters.set(kind, n);
    return `${KIND_LABELS[kind]} ${n}`;
  };

  const actions: Actions = {
    addNode(kind) {
      const id = addNode(ctx.state, kind, defaultName(kind));
      ctx.positions.set(id, nextPosition(ctx));
      ctx.state.selection = id;
      afterEdit();
    },
    select(sel) {
      ctx.state.selection = sel;
      repaint();
    },
    deleteSelection() {
      const sel = ctx.state.selection;
      if (sel === null) return;
      if (sel.startsWith("link:")) {
        const index = Number(sel.slice(5));
        ctx.state.document.links.splice(index, 1);
        ctx.state.selection = null;
        ctx.state.dirty = true;
      } else {
        removeNode(ctx.state, sel);
        ctx.positions.delete(sel);
      }
      afterEdit();
    },
    rename(name) {
      if (ctx.state.selection && !ctx.state.selection.startsWith("link:")) {
        renameNode(ctx.state, ctx.state.selection, name);
        afterEdit();
      }
    },
    setLoad(load) {
      if (ctx.state.selection && !ctx.state.selection.startsWith("link:")) {
        setTeachingLoad(ctx.state, ctx.state.selection, load);
        afterEdit();
      }
    },
    setRoomOverride(roomType) {
      if (ctx.state.selection && !ctx.state.selection.startsWith("link:")) {
        setRoomTypeOverride(ctx.state, ctx.state.selection, roomType);
        afterEdit();
      }
    },
    setTab(tab) {
      ctx.tab = tab;
      repaint();
    },
    pickTimeResource(id) {
      ctx.timeResource = id;
      repaint();
    },
    pickTimeMode(mode: WishMode) {
      ctx.timeMode = mode;
      repaint();
    },
    clickTimeCell(slot) {
      if (ctx.timeResource === null) return;
      toggleSlot(ctx.state, ctx.timeResource, slot, ctx.timeMode);
      afterEdit();
    },
    applyGrid(days, slots) {
      if (days >= 1 && slots >= 1) {
        setGrid(ctx.state, days, slots);
        afterEdit();
      }
    },
    setRoom(name, count, capacity) {
      setRoom(ctx.state, name, count, capacity ?? undefined);
      afterEdit();
    },
    toggleDayOff(resource) {
      toggleDayOff(ctx.state, resource);
      afterEdit();
    },
    setBan(on) {
      setFullDayBan(ctx.state, on);
      afterEdit();
    },
    toggleBlocked(slot) {
      toggleBlockedSlot(ctx.state, slot);
      afterEdit();
    },
    solveNow(timeLimitMs, maxSolutions) {
      ctx.solving = true;
      repaint();
      const opts: { time_limit_ms: number; max_solutions?: number } = {
        time_limit_ms: timeLimitMs,
      };
      if (maxSolutions !== null) opts.max_solutions = maxSolutions;
      void runSolve(ctx.state, ctx.client, opts, ctx.solve).then(() => {
        ctx.solving = false;
        if (ctx.state.notice !== null) showNoticeBriefly();
        repaint();
      });
    },
    abortSolve() {
      abortSolve(ctx.solve);
      ctx.solving = false;
      repaint();
    },
    exportDoc() {
      const blob = new Blob([exportDocument(ctx.state)], { type: "application/json" });
      const url = URL.createObjectURL(blob);
      const a = document.createElement("a");
      a.href = url;
      a.download = "timetable-graph.json";
      a.click();
      URL.revokeObjectURL(url);
    },
    importDoc(text) {
      try {
        importDocument(ctx.state, text);
      } catch (err) {
        ctx.state.notice = `import failed: ${err instanceof Error ? err.message : err}`;
        repaint();
        showNoticeBriefly();
        return;
      }
      // imported nodes have no canvas positions yet
      ctx.positions.clear();
      for (const node of ctx.state.document.nodes) {
        ctx.positions.set(node.id, nextPosition(ctx));
      }
      afterEdit();
    },
    retry() {
      ctx.state.banner = null;
      void refreshCodePane(ctx.state, ctx.client, ctx.compile).then(repaint);
      void health(ctx.client).then((up) => {
        ctx.serverUp = up;
        repaint();
      });
      repaint();
    },
    dismissNotice() {
      ctx.state.notice = null;
      repaint();
    },
  };

  view = buildUI(root, actions);

  // canvas gestures: drag a node body to move it, drag onto another node to
  // request a link.  The local rule mirror colors the target while dragging;
  // the drop still goes to the server for the real verdict.
  interface Drag {
    id: string;
    startX: number;
    startY: number;
    moved: boolean;
    overTarget: string | null;
  }
  let drag: Drag | null = null;

  const nodeIdAt = (ev: MouseEvent): string | null => {
    let elem = ev.target as Element | null;
    while (elem && elem !== view.canvas) {
      const id = elem.getAttribute("data-id");
      if (id) return id;
      elem = elem.parentElement;
    }
    return null;
  };

  view.canvas.addEventListener("mousedown", (ev) => {
    const id = nodeIdAt(ev);
    if (id) {
      drag = { id, startX: ev.offsetX, startY: ev.offsetY, moved: false, overTarget: null };
      ev.preventDefault();
      return;
    }
    const link = (ev.target as Element).getAttribute("data-link");
    actions.select(link !== null ? `link:${link}` : null);
  });

  view.canvas.addEventListener("mousemove", (ev) => {
    if (!drag) return;
    const over = nodeIdAt(ev);
    if (over !== null && over !== drag.id) {
      // hovering a second node: preview the link verdict
      drag.overTarget = over;
      const verdict = checkLinkLocal(ctx.state.document, drag.id, over);
      view.canvas.style.cursor = verdict === null ? "alias" : "not-allowed";
      return;
    }
    drag.overTarget = null;
    view.canvas.style.cursor = "grabbing";
    if (Math.abs(ev.offsetX - drag.startX) + Math.abs(ev.offsetY - drag.startY) > 3) {
      drag.moved = true;
      ctx.positions.set(drag.id, { x: ev.offsetX, y: ev.offsetY });
      repaint();
    }
  });

  const endDrag = (ev: MouseEvent) => {
    if (!drag) return;
    const d = drag;
    drag = null;
    view.canvas.style.cursor = "";
    const over = nodeIdAt(ev) ?? d.overTarget;
    if (over !== null && over !== d.id) {
      void attemptLink(ctx.state, ctx.client, d.id, over).then((added) => {
        if (added) afterEdit();
        else {
          repaint();
          if (ctx.state.notice !== null) showNoticeBriefly();
        }
      });
      return;
    }
    if (!d.moved) actions.select(d.id);
    else repaint();
  };
  view.canvas.addEventListener("mouseup", endDrag);
  view.canvas.addEventListener("mouseleave", () => {
    if (drag?.moved) repaint();
    drag = null;
    view.canvas.style.cursor = "";
  });

  const pollHealth = () => {
    void health(ctx.client).then((up) => {
      if (up !== ctx.serverUp) {
        ctx.serverUp = up;
        repaint();
      }
    });
  };
  pollHealth();
  setInterval(pollHealth, 10_000);

  // initial compile so the pane shows the bare skeleton program
  void refreshCodePane(ctx.state, ctx.client, ctx.compile).then(repaint);
  repaint();
}

main();
