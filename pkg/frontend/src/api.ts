// Typed client for the floodlab JSON-over-HTTP game service.

export interface View {
    token: string;
    vertices: number;
    colors: number[];
    components: number[][];
    component_colors: number[];
    flooded: boolean;
    moves_played: number;
    pivot: number | null;
    c_max: number;
    edges: [number, number][];
}

export interface Hint {
    move: { v: number; c: number } | null;
    remaining: number;
    exact: boolean;
    status: string;
}

export interface MoveRequest {
    v?: number;
    set?: number[];
    c: number;
}

export class ApiError extends Error {
    constructor(message: string, readonly status: number, readonly detail?: unknown) {
        super(message);
    }
}

async function toError(response: Response): Promise<ApiError> {
    let detail: unknown = undefined;
    let message = `${response.status} ${response.statusText}`;
    try {
        const body = await response.json();
        detail = body.detail;
        if (typeof body.detail === "string") {
            message = body.detail;
        } else if (body.detail && typeof body.detail.message === "string") {
            message = body.detail.message;
        }
    } catch {
        // keep the status-line message
    }
    return new ApiError(message, response.status, detail);
}

export class ApiClient {
    constructor(
        readonly baseUrl: string,
        private readonly fetchImpl: typeof fetch = fetch,
    ) {}

    private async request<T>(path: string, init?: RequestInit): Promise<T> {
        const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
        if (!response.ok) {
            throw await toError(response);
        }
        return response.json() as Promise<T>;
    }

    newGame(instance: unknown): Promise<View> {
        return this.request<View>("/game", {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify(instance),
        });
    }

    getView(token: string): Promise<View> {
        return this.request<View>(`/game/${token}`);
    }

    move(token: string, move: MoveRequest): Promise<View> {
        return this.request<View>(`/game/${token}/move`, {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify(move),
        });
    }

    hint(token: string, mode: "free" | "fixed"): Promise<Hint> {
        return this.request<Hint>(`/game/${token}/hint?mode=${mode}`, {
            method: "POST",
        });
    }

    undo(token: string): Promise<View> {
        return this.request<View>(`/game/${token}/undo`, { method: "POST" });
    }
}
