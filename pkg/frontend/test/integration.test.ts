import { spawn, type ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { ApiClient, ApiError } from "../src/api.js";
import { badgeForError, LIMIT_BADGE, verdictBadgeText, winBannerText } from "../src/board.js";
import { GameController } from "../src/controller.js";
import type { Player } from "../src/types.js";

/** End-to-end checks against the real game server.
 *
 * The server binary comes from the installed Python package; we bind an
 * ephemeral port and scrape it from the startup banner.
 */

let proc: ChildProcess;
let api: ApiClient;

beforeAll(async () => {
  proc = spawn("feedbackgame", ["serve", "--host", "127.0.0.1", "--port", "0"], {
    env: { ...process.env, PYTHONUNBUFFERED: "1" },
    stdio: ["ignore", "pipe", "pipe"],
  });
  let stderr = "";
  proc.stderr?.on("data", (chunk: Buffer) => {
    stderr += chunk.toString();
  });
  const base = await new Promise<string>((resolve, reject) => {
    let banner = "";
    const timer = setTimeout(
      () => reject(new Error(`no startup banner within 30s\n${banner}${stderr}`)),
      30_000,
    );
    proc.stdout?.on("data", (chunk: Buffer) => {
      banner += chunk.toString();
      const m = banner.match(/serving on (http:\/\/[^/ ]+)\//);
      if (m) {
        clearTimeout(timer);
        resolve(m[1]);
      }
    });
    proc.on("error", (err) => {
      clearTimeout(timer);
      reject(err);
    });
    proc.on("exit", (code) => {
      clearTimeout(timer);
      reject(new Error(`server exited before serving (code ${code})\n${stderr}`));
    });
  });
  api = new ApiClient(base);
}, 60_000);

afterAll(() => {
  proc?.kill();
});

describe("scripted game via the client stack", () => {
  it(
    "replaying the client's move log reproduces the final status",
    async () => {
      // play a full game against the engine through the controller, with the
      // human side scripted to the alphabetically first highlighted vertex
      const controller = new GameController(api);
      await controller.newGame({ family: "octa", n: 2, start: "v1", engine_side: "bob" });
      expect(controller.state.session).not.toBeNull();
      let guard = 0;
      while (controller.state.session!.state.status === "ongoing" && guard < 30) {
        guard += 1;
        const moves = [...controller.state.session!.legal_moves].sort();
        expect(moves.length).toBeGreaterThan(0);
        await controller.clickVertex(moves[0]);
        expect(controller.state.toast).toBe("");
      }
      const final = controller.state.session!;
      expect(final.state.status).toBe("won");
      expect(winBannerText(final)).not.toBe("");

      // feed the identical move log into a fresh two-human session
      const replay = await api.createGame({
        family: "octa",
        n: 2,
        start: "v1",
        engine_side: "none",
      });
      let replayed = replay;
      for (const move of final.moves) {
        replayed = await api.postMove(replay.id, move.to);
      }
      expect(replayed.state.status).toBe(final.state.status);
      expect(replayed.state.winner).toBe(final.state.winner);
      expect(replayed.state.reason).toBe(final.state.reason);
      expect(replayed.state.token).toBe(final.state.token);
      expect(replayed.moves).toEqual(final.moves);
    },
    120_000,
  );
});

describe("verdict badge vs the solve endpoint", () => {
  // every level of the three smallest octahedral paths, with the expected
  // winner frozen from the engine's own exhaustive-search results
  const cells: Array<[number, number, Player]> = [
    [1, 0, "bob"],
    [1, 1, "bob"],
    [2, 0, "alice"],
    [2, 1, "bob"],
    [2, 2, "alice"],
    [3, 0, "alice"],
    [3, 1, "alice"],
    [3, 2, "alice"],
    [3, 3, "alice"],
  ];

  it(
    "matches on all nine level cells within the solver limit",
    async () => {
      for (const [n, p, expected] of cells) {
        const verdict = await api.solve({ family: "octa", n, p });
        expect(verdict.winner, `n=${n} p=${p}`).toBe(expected);
        const title = expected === "alice" ? "Alice" : "Bob";
        expect(verdictBadgeText(verdict)).toBe(`theoretical winner: ${title}`);
      }
    },
    180_000,
  );

  it("falls back to the greedy-engine badge past the limit", async () => {
    const err = await api.solve({ family: "octa", n: 5, p: 0 }).catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).status).toBe(413);
    expect(badgeForError(err)).toBe(LIMIT_BADGE);
  });

  it(
    "still plays over-limit games, labeled non-optimal, with engine replies",
    async () => {
      const session = await api.createGame({
        family: "octa",
        n: 5,
        start: "v0",
        engine_side: "bob",
      });
      expect(session.engine_optimal).toBe(false);
      const after = await api.postMove(session.id, session.legal_moves[0]);
      expect(after.moves).toHaveLength(2);
      expect(after.moves[1].by).toBe("bob");
    },
    60_000,
  );
});
