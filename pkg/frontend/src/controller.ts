import { ApiError, type ApiClient } from "./api.js";
import {
  applyLocalMove,
  badgeForError,
  EXPIRED_NOTICE,
  verdictBadgeText,
} from "./board.js";
import type { GraphPayload, NewGameRequest, Session } from "./types.js";

/** All state the UI renders from; the DOM layer owns none of its own. */
export interface AppState {
  session: Session | null;
  preview: GraphPayload | null;
  badge: string;
  toast: string;
  expired: boolean;
  busy: boolean;
}

export function initialState(): AppState {
  return { session: null, preview: null, badge: "", toast: "", expired: false, busy: false };
}

type Api = Pick<ApiClient, "createGame" | "getGame" | "postMove" | "solve" | "getGraph">;

/** Drives the game flow against the API and mutates one AppState.
 *
 * Deliberately DOM-free: the single `onChange` callback is the only way the
 * controller reaches the outside, which keeps every flow (optimistic move,
 * rollback, expiry) runnable under plain node in tests.
 */
export class GameController {
  readonly state: AppState = initialState();

  constructor(
    private readonly api: Api,
    private readonly onChange: (state: AppState) => void = () => {},
  ) {}

  private emit(): void {
    this.onChange(this.state);
  }

  /** Fetch just the graph so the start-vertex picker can show the board. */
  async loadPreview(family: string, n?: number): Promise<void> {
    try {
      this.state.preview = await this.api.getGraph(family, n);
      this.state.toast = "";
    } catch (err) {
      this.state.preview = null;
      this.state.toast = errorText(err);
    }
    this.emit();
  }

  /** Create a session and fetch the verdict badge for its start. */
  async newGame(req: NewGameRequest): Promise<void> {
    this.state.busy = true;
    this.emit();
    try {
      this.state.session = await this.api.createGame(req);
      this.state.expired = false;
      this.state.toast = "";
      this.state.badge = await this.fetchBadge(req);
    } catch (err) {
      this.state.toast = errorText(err);
    } finally {
      this.state.busy = false;
      this.emit();
    }
  }

  private async fetchBadge(req: NewGameRequest): Promise<string> {
    try {
      const verdict = await this.api.solve({ family: req.family, n: req.n, start: req.start });
      return verdictBadgeText(verdict);
    } catch (err) {
      return badgeForError(err);
    }
  }

  /** Handle a board click.
   *
   * Non-highlighted vertices are a no-op. A highlighted one is applied
   * optimistically, confirmed by the server (whose response also carries the
   * engine's reply), then reconciled with one follow-up poll. A 409/422 rolls
   * the optimistic state back; a vanished session flips to "expired".
   */
  async clickVertex(name: string): Promise<void> {
    const session = this.state.session;
    if (!session || this.state.busy || this.state.expired) {
      return;
    }
    const { state } = session;
    if (state.status !== "ongoing" || !session.legal_moves.includes(name)) {
      return;
    }
    if (session.engine_side !== null && state.mover === session.engine_side) {
      return;
    }
    this.state.busy = true;
    this.state.session = applyLocalMove(session, name);
    this.emit();
    try {
      const updated = await this.api.postMove(session.id, name);
      this.state.session = await this.pollState(updated);
      this.state.toast = "";
    } catch (err) {
      this.state.session = session; // rollback the optimistic render
      if (err instanceof ApiError && err.kind === "unknown_session") {
        this.state.expired = true;
        this.state.toast = EXPIRED_NOTICE;
      } else {
        this.state.toast = errorText(err);
      }
    } finally {
      this.state.busy = false;
      this.emit();
    }
  }

  private async pollState(fallback: Session): Promise<Session> {
    try {
      return await this.api.getGame(fallback.id);
    } catch {
      return fallback; // the move already succeeded; a failed poll is cosmetic
    }
  }

  /** Clear the expired flag so the new-game form can restart. */
  restart(): void {
    this.state.session = null;
    this.state.expired = false;
    this.state.badge = "";
    this.state.toast = "";
    this.emit();
  }
}

function errorText(err: unknown): string {
  if (err instanceof ApiError) {
    return err.message;
  }
  return err instanceof Error ? err.message : String(err);
}
