/**
 * Session flow, kept free of DOM so the scripted tests can drive it: start
 * a game, submit the human's move and auto-request the engine's reply,
 * fetch hints. Listeners receive every fresh view for rendering.
 */

import { ApiError, type GameClient, type GameView, type HintPayload, type SessionSetup, type SignSymbol } from "./api.js";

export interface SessionEvents {
  onView?: (view: GameView) => void;
  onThinking?: (thinking: boolean) => void;
  onError?: (message: string) => void;
}

export class SessionController {
  private view: GameView | null = null;
  private busy = false;

  constructor(
    private readonly client: GameClient,
    private readonly events: SessionEvents = {},
  ) {}

  get current(): GameView | null {
    return this.view;
  }

  private publish(view: GameView) {
    this.view = view;
    this.events.onView?.(view);
  }

  private fail(err: unknown): null {
    const message = err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
    this.events.onError?.(message);
    return null;
  }

  async start(setup: SessionSetup): Promise<GameView | null> {
    try {
      const view = await this.client.createGame(setup);
      this.publish(view);
      return view;
    } catch (err) {
      return this.fail(err);
    }
  }

  /** Submit the human move, then automatically ask for the engine reply
   * while reporting a thinking state. At most one mutation in flight. */
  async playMove(vertex: number, sign: SignSymbol): Promise<GameView | null> {
    if (this.view === null || this.busy) return null;
    this.busy = true;
    try {
      let view = await this.client.postMove(this.view.id, vertex, sign);
      this.publish(view);
      if (view.status === "in_progress" && view.to_move !== view.human_role) {
        this.events.onThinking?.(true);
        try {
          view = await this.client.engineMove(this.view.id);
          this.publish(view);
        } finally {
          this.events.onThinking?.(false);
        }
      }
      return view;
    } catch (err) {
      return this.fail(err);
    } finally {
      this.busy = false;
    }
  }

  /** Ask the engine to open the game when it is Player 1 and the session
   * was restored without its move (normally create applies it already). */
  async requestEngineMove(): Promise<GameView | null> {
    if (this.view === null) return null;
    try {
      const view = await this.client.engineMove(this.view.id);
      this.publish(view);
      return view;
    } catch (err) {
      return this.fail(err);
    }
  }

  async refresh(): Promise<GameView | null> {
    if (this.view === null) return null;
    try {
      const view = await this.client.getGame(this.view.id);
      this.publish(view);
      return view;
    } catch (err) {
      return this.fail(err);
    }
  }

  async hint(): Promise<HintPayload | null> {
    if (this.view === null) return null;
    try {
      return await this.client.hint(this.view.id);
    } catch (err) {
      return this.fail(err);
    }
  }
}
