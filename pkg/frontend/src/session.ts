// Game session logic: every state transition round-trips through the server;
// the local state is nothing but the last server response plus pending input.

import { ApiClient, ApiError, Hint, View } from "./api.js";

export type Mode = "free" | "fixed";

export interface SessionState {
    view: View | null;
    mode: Mode;
    hint: Hint | null;
    // optimum reported by the last hint taken from the *initial* position
    optimum: number | null;
    error: string | null;
}

export interface PlayGuard {
    allowed: boolean;
    reason?: string;
}

export class GameSession {
    state: SessionState = {
        view: null, mode: "free", hint: null, optimum: null, error: null,
    };

    constructor(private readonly api: ApiClient) {}

    private get view(): View {
        if (!this.state.view) {
            throw new Error("no active game");
        }
        return this.state.view;
    }

    get token(): string {
        return this.view.token;
    }

    async start(instance: unknown, mode: Mode): Promise<View> {
        const view = await this.api.newGame(instance);
        if (mode === "fixed" && view.pivot === null) {
            throw new Error("fixed mode needs an instance with a pivot");
        }
        this.state = { view, mode, hint: null, optimum: null, error: null };
        return view;
    }

    setMode(mode: Mode): void {
        if (mode === "fixed" && this.view.pivot === null) {
            this.state.error = "fixed mode needs an instance with a pivot";
            return;
        }
        this.state.mode = mode;
        this.state.hint = null;
    }

    /** Component of the pivot in the current view, empty without a pivot. */
    pivotComponent(): number[] {
        const view = this.view;
        if (view.pivot === null) {
            return [];
        }
        for (const component of view.components) {
            if (component.includes(view.pivot)) {
                return component;
            }
        }
        return [];
    }

    /** Fixed mode only accepts clicks inside the pivot's component. */
    canPlay(vertex: number): PlayGuard {
        const view = this.view;
        if (view.flooded) {
            return { allowed: false, reason: "the board is already flooded" };
        }
        if (this.state.mode === "fixed" && !this.pivotComponent().includes(vertex)) {
            return {
                allowed: false,
                reason: "fixed mode only plays the pivot component",
            };
        }
        return { allowed: true };
    }

    async play(vertex: number, color: number): Promise<View> {
        const guard = this.canPlay(vertex);
        if (!guard.allowed) {
            this.state.error = guard.reason ?? "illegal move";
            throw new ApiError(this.state.error, 0);
        }
        // fixed-mode moves are sent as the pivot vertex: any click inside the
        // pivot component means "play the pivot"
        const vertexToSend = this.state.mode === "fixed"
            ? (this.view.pivot as number)
            : vertex;
        try {
            const view = await this.api.move(this.token, { v: vertexToSend, c: color });
            this.state.view = view;
            this.state.hint = null;
            this.state.error = null;
            return view;
        } catch (error) {
            // a 422 is surfaced inline, never silently dropped
            this.state.error = error instanceof ApiError
                ? error.message
                : String(error);
            throw error;
        }
    }

    async requestHint(): Promise<Hint> {
        const hint = await this.api.hint(this.token, this.state.mode);
        this.state.hint = hint;
        if (this.view.moves_played === 0) {
            this.state.optimum = hint.remaining;
        }
        this.state.error = null;
        return hint;
    }

    async undo(): Promise<View> {
        const view = await this.api.undo(this.token);
        this.state.view = view;
        this.state.hint = null;
        this.state.error = null;
        return view;
    }

    /** Re-fetch the server view, as a page reload does; the reconstructed
     * view must be byte-identical to the last response. */
    async reload(): Promise<View> {
        const view = await this.api.getView(this.token);
        this.state.view = view;
        this.state.hint = null;
        return view;
    }

    snapshot(): string {
        return JSON.stringify(this.state.view);
    }
}
