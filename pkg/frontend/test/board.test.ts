import { describe, expect, it } from "vitest";
import { ApiError } from "../src/api.js";
import {
  applyLocalMove,
  badgeForError,
  boardView,
  circleLayout,
  edgeKey,
  LIMIT_BADGE,
  moveLogLines,
  previewView,
  renderBoardSvg,
  statusLine,
  verdictBadgeText,
  winBannerText,
} from "../src/board.js";
import type { Session, SolveResponse } from "../src/types.js";

/** A small in-flight session: triangle a-b-c, token moved a→b already. */
function triangleSession(overrides: Partial<Session["state"]> = {}): Session {
  return {
    id: "s1",
    engine_side: "bob",
    engine_optimal: true,
    state: {
      start: "a",
      token: "b",
      used: [["a", "b"]],
      mover: "alice",
      status: "ongoing",
      ...overrides,
    },
    legal_moves: ["c"],
    moves: [{ by: "alice", to: "b" }],
    graph: {
      vertices: ["a", "b", "c"],
      edges: [
        ["a", "b"],
        ["b", "c"],
        ["a", "c"],
      ],
      layout: { a: [0, 0], b: [2, 0], c: [1, 1] },
    },
    created: 0,
    updated: 0,
  };
}

function wonSession(
  winner: "alice" | "bob",
  reason: "returned_to_start" | "isolated_vertex",
  engineSide: "alice" | "bob" | null = "bob",
): Session {
  const s = triangleSession({ status: "won", winner, reason, mover: "bob" });
  s.engine_side = engineSide;
  s.legal_moves = [];
  return s;
}

describe("boardView", () => {
  it("highlights exactly the server's legal moves on the human's turn", () => {
    const view = boardView(triangleSession());
    expect([...view.highlights]).toEqual(["c"]);
    expect(view.token).toBe("b");
    expect(view.start).toBe("a");
    expect(view.usedKeys.has(edgeKey("b", "a"))).toBe(true);
  });

  it("highlights nothing while the engine is to move", () => {
    const session = triangleSession({ mover: "bob" });
    expect(boardView(session).highlights.size).toBe(0);
  });

  it("highlights nothing once the game is won", () => {
    expect(boardView(wonSession("alice", "returned_to_start")).highlights.size).toBe(0);
  });

  it("keeps highlights on for both movers when no engine is seated", () => {
    const session = triangleSession({ mover: "bob" });
    session.engine_side = null;
    expect([...boardView(session).highlights]).toEqual(["c"]);
  });

  it("falls back to a circle layout when the server sent no hints", () => {
    const session = triangleSession();
    delete session.graph.layout;
    const view = boardView(session);
    expect(view.layout).toEqual(circleLayout(["a", "b", "c"]));
    expect(view.layout.a[0]).toBeCloseTo(1);
  });
});

describe("applyLocalMove", () => {
  it("slides the token, records the edge, flips the mover, clears highlights", () => {
    const before = triangleSession();
    const after = applyLocalMove(before, "c");
    expect(after.state.token).toBe("c");
    expect(after.state.used).toEqual([
      ["a", "b"],
      ["b", "c"],
    ]);
    expect(after.state.mover).toBe("bob");
    expect(after.legal_moves).toEqual([]);
    expect(after.moves.at(-1)).toEqual({ by: "alice", to: "c" });
    // the input is untouched so a rollback can reuse it
    expect(before.state.token).toBe("b");
    expect(before.legal_moves).toEqual(["c"]);
  });
});

describe("renderBoardSvg", () => {
  it("marks used edges and never makes them clickable", () => {
    const svg = renderBoardSvg(boardView(triangleSession()));
    const lines = svg.match(/<line[^>]*>/g) ?? [];
    expect(lines).toHaveLength(3);
    const used = lines.filter((l) => l.includes('class="edge used"'));
    expect(used).toHaveLength(1);
    expect(used[0]).not.toContain("data-move");
    expect(svg).not.toMatch(/<line[^>]*data-move/);
  });

  it("tags only highlighted vertices with data-move", () => {
    const svg = renderBoardSvg(boardView(triangleSession()));
    const groups = svg.match(/<g[^>]*data-vertex[^>]*>/g) ?? [];
    expect(groups).toHaveLength(3);
    const clickable = groups.filter((g) => g.includes('data-move="1"'));
    expect(clickable).toHaveLength(1);
    expect(clickable[0]).toContain('data-vertex="c"');
    expect(clickable[0]).toContain("legal");
  });

  it("rings the token vertex and styles the start", () => {
    const svg = renderBoardSvg(boardView(triangleSession()));
    const tokenGroup = svg.split("<g").find((g) => g.includes('data-vertex="b"'));
    expect(tokenGroup).toContain("token-ring");
    const startGroup = svg.split("<g").find((g) => g.includes('data-vertex="a"'));
    expect(startGroup).toContain("start");
    expect(startGroup).not.toContain("token-ring");
  });

  it("renders a clean preview with no token, no ring, no highlights", () => {
    const svg = renderBoardSvg(previewView(triangleSession().graph));
    expect(svg).not.toContain("token-ring");
    expect(svg).not.toContain("data-move");
    expect(svg).not.toContain("used");
  });

  it("escapes vertex names in markup", () => {
    const view = previewView({
      vertices: ['x"<1>'],
      edges: [],
      layout: { 'x"<1>': [0, 0] },
    });
    const svg = renderBoardSvg(view);
    expect(svg).toContain("x&quot;&lt;1&gt;");
    expect(svg).not.toContain('data-vertex="x"<');
  });
});

describe("verdict badge", () => {
  const verdict = (winner: "alice" | "bob"): SolveResponse => ({
    winner,
    witness: winner === "alice" ? "v1" : null,
    stats: { states_explored: 3, memo_entries: 2, elapsed: 0.001 },
    start: "v0",
  });

  it("names the theoretical winner", () => {
    expect(verdictBadgeText(verdict("alice"))).toBe("theoretical winner: Alice");
    expect(verdictBadgeText(verdict("bob"))).toBe("theoretical winner: Bob");
  });

  it("falls back to the greedy-engine notice on a 413", () => {
    const err = new ApiError(413, "limit_exceeded", "too many edges");
    expect(badgeForError(err)).toBe(LIMIT_BADGE);
    expect(badgeForError(err)).toBe("solver limit exceeded; engine plays greedily");
  });

  it("stays silent for other errors", () => {
    expect(badgeForError(new ApiError(400, "bad_request", "no"))).toBe("");
    expect(badgeForError(new Error("boom"))).toBe("");
  });
});

describe("win banner", () => {
  it("congratulates the human when the engine's opponent wins", () => {
    expect(winBannerText(wonSession("alice", "returned_to_start", "bob"))).toBe(
      "You win: returned to start",
    );
    expect(winBannerText(wonSession("bob", "isolated_vertex", "alice"))).toBe(
      "You win: isolated the token",
    );
  });

  it("owns up when the engine wins", () => {
    expect(winBannerText(wonSession("bob", "returned_to_start", "bob"))).toBe(
      "You lose: engine returned to start",
    );
    expect(winBannerText(wonSession("alice", "isolated_vertex", "alice"))).toBe(
      "You lose: engine isolated the token",
    );
  });

  it("names the side in a two-player game", () => {
    expect(winBannerText(wonSession("alice", "returned_to_start", null))).toBe(
      "Alice wins: returned to start",
    );
    expect(winBannerText(wonSession("bob", "isolated_vertex", null))).toBe(
      "Bob wins: isolated the token",
    );
  });

  it("stays empty while the game is ongoing", () => {
    expect(winBannerText(triangleSession())).toBe("");
  });
});

describe("sidebar text", () => {
  it("lists moves in order with 1-based numbering", () => {
    const session = triangleSession();
    session.moves = [
      { by: "alice", to: "b" },
      { by: "bob", to: "c" },
    ];
    expect(moveLogLines(session)).toEqual(["1. Alice → b", "2. Bob → c"]);
  });

  it("describes whose turn it is", () => {
    expect(statusLine(triangleSession())).toBe("Alice to move");
    expect(statusLine(triangleSession({ mover: "bob" }))).toBe("engine is thinking…");
    expect(statusLine(wonSession("alice", "returned_to_start"))).toBe("game over");
  });
});
