import { ApiError } from "./api.js";
import type { GraphPayload, Player, Session, SolveResponse } from "./types.js";

/** Pure presentation layer: everything here maps data to strings/objects and
 * touches no DOM, so the whole module is unit-testable under plain node.
 */

export interface BoardView {
  graph: GraphPayload;
  layout: Record<string, [number, number]>;
  token: string | null;
  start: string | null;
  usedKeys: Set<string>;
  /** Vertices the human may click right now — verbatim the server's legal set. */
  highlights: Set<string>;
}

export const LIMIT_BADGE = "solver limit exceeded; engine plays greedily";
export const EXPIRED_NOTICE = "session expired";

/** Canonical undirected key for an edge between two named vertices. */
export function edgeKey(a: string, b: string): string {
  return a < b ? `${a}|${b}` : `${b}|${a}`;
}

/** Evenly spaced unit-circle positions, for graphs the server sent no hints for. */
export function circleLayout(vertices: string[]): Record<string, [number, number]> {
  const out: Record<string, [number, number]> = {};
  const n = Math.max(vertices.length, 1);
  vertices.forEach((name, i) => {
    const angle = (2 * Math.PI * i) / n;
    out[name] = [Math.cos(angle), Math.sin(angle)];
  });
  return out;
}

/** Board with no session yet: the preview shown while picking a start vertex. */
export function previewView(graph: GraphPayload): BoardView {
  return {
    graph,
    layout: graph.layout ?? circleLayout(graph.vertices),
    token: null,
    start: null,
    usedKeys: new Set(),
    highlights: new Set(),
  };
}

/** Project a server session onto what the board needs to draw.
 *
 * Highlights are nonempty only when the game is ongoing and it is a human's
 * turn; legality itself always comes from the server's `legal_moves`.
 */
export function boardView(session: Session): BoardView {
  const { state } = session;
  const humansTurn =
    state.status === "ongoing" &&
    (session.engine_side === null || state.mover !== session.engine_side);
  return {
    graph: session.graph,
    layout: session.graph.layout ?? circleLayout(session.graph.vertices),
    token: state.token,
    start: state.start,
    usedKeys: new Set(state.used.map(([a, b]) => edgeKey(a, b))),
    highlights: new Set(humansTurn ? session.legal_moves : []),
  };
}

/** Optimistic local application of a human move, used only until the server
 * answers: the token slides, the traversed edge is marked used, and the
 * highlights go dark. The server response (or a rollback) replaces this.
 */
export function applyLocalMove(session: Session, to: string): Session {
  const { state } = session;
  return {
    ...session,
    state: {
      ...state,
      token: to,
      used: [...state.used, [state.token, to]],
      mover: state.mover === "alice" ? "bob" : "alice",
    },
    legal_moves: [],
    moves: [...session.moves, { by: state.mover, to }],
  };
}

const TITLES: Record<Player, string> = { alice: "Alice", bob: "Bob" };

export function playerTitle(p: Player): string {
  return TITLES[p];
}

/** Badge shown next to the board once the solver has judged the start. */
export function verdictBadgeText(verdict: SolveResponse): string {
  return `theoretical winner: ${playerTitle(verdict.winner)}`;
}

/** Badge for a solver refusal; 413 means the position is over the edge cap. */
export function badgeForError(err: unknown): string {
  if (err instanceof ApiError && err.status === 413) {
    return LIMIT_BADGE;
  }
  return "";
}

const REASON_TEXT: Record<string, string> = {
  returned_to_start: "returned to start",
  isolated_vertex: "isolated the token",
};

/** Banner announcing the result once a session reaches `won`. */
export function winBannerText(session: Session): string {
  const { state } = session;
  if (state.status !== "won" || !state.winner || !state.reason) {
    return "";
  }
  const reason = REASON_TEXT[state.reason] ?? state.reason;
  if (session.engine_side === null) {
    return `${playerTitle(state.winner)} wins: ${reason}`;
  }
  if (state.winner === session.engine_side) {
    return `You lose: engine ${reason}`;
  }
  return `You win: ${reason}`;
}

/** One line per move for the sidebar log. */
export function moveLogLines(session: Session): string[] {
  return session.moves.map((m, i) => `${i + 1}. ${playerTitle(m.by)} → ${m.to}`);
}

export function statusLine(session: Session): string {
  const { state } = session;
  if (state.status === "won") {
    return "game over";
  }
  if (session.engine_side !== null && state.mover === session.engine_side) {
    return "engine is thinking…";
  }
  return `${playerTitle(state.mover)} to move`;
}

function escapeXml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

const SCALE = 90;
const PAD = 50;

/** Render the board as an SVG document string.
 *
 * The output is inert markup: clickable vertices carry `data-vertex` plus
 * `data-move="1"`, and the DOM layer attaches one delegated listener. Used
 * edges get the `used` class (grayed, dashed, pointer-events none in CSS) and
 * never carry a move attribute, so they cannot be clicked back into play.
 */
export function renderBoardSvg(view: BoardView): string {
  const coords = new Map<string, [number, number]>();
  let minX = Infinity;
  let maxX = -Infinity;
  let minY = Infinity;
  let maxY = -Infinity;
  for (const name of view.graph.vertices) {
    const pos = view.layout[name] ?? [0, 0];
    coords.set(name, pos);
    minX = Math.min(minX, pos[0]);
    maxX = Math.max(maxX, pos[0]);
    minY = Math.min(minY, pos[1]);
    maxY = Math.max(maxY, pos[1]);
  }
  if (!isFinite(minX)) {
    minX = maxX = minY = maxY = 0;
  }
  const px = (x: number) => PAD + (x - minX) * SCALE;
  // flip y so layout hints keep their math orientation on screen
  const py = (y: number) => PAD + (maxY - y) * SCALE;
  const width = (maxX - minX) * SCALE + 2 * PAD;
  const height = (maxY - minY) * SCALE + 2 * PAD;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" class="board">`,
  );
  for (const [a, b] of view.graph.edges) {
    const [ax, ay] = coords.get(a) ?? [0, 0];
    const [bx, by] = coords.get(b) ?? [0, 0];
    const used = view.usedKeys.has(edgeKey(a, b));
    const cls = used ? "edge used" : "edge";
    parts.push(
      `<line class="${cls}" x1="${px(ax)}" y1="${py(ay)}" x2="${px(bx)}" y2="${py(by)}"/>`,
    );
  }
  for (const name of view.graph.vertices) {
    const [x, y] = coords.get(name) ?? [0, 0];
    const cx = px(x);
    const cy = py(y);
    const classes = ["vertex"];
    if (name === view.start) classes.push("start");
    const legal = view.highlights.has(name);
    if (legal) classes.push("legal");
    const move = legal ? ` data-move="1"` : "";
    parts.push(`<g class="${classes.join(" ")}" data-vertex="${escapeXml(name)}"${move}>`);
    if (name === view.token) {
      parts.push(`<circle class="token-ring" cx="${cx}" cy="${cy}" r="21"/>`);
    }
    parts.push(`<circle class="dot" cx="${cx}" cy="${cy}" r="14"/>`);
    parts.push(`<text x="${cx}" y="${cy + 4}">${escapeXml(name)}</text>`);
    parts.push("</g>");
  }
  parts.push("</svg>");
  return parts.join("");
}
