// Page wiring: presets, board painting, mode toggle, hints, undo.

import { ApiClient } from "./api.js";
import { buildRenderModel, colorOf, paint } from "./render.js";
import { GameSession, Mode } from "./session.js";

const PRESETS: Record<string, unknown> = {
    "tight path (n=2)": {
        vertices: 5,
        edges: [[0, 1], [1, 2], [2, 3], [3, 4]],
        colors: [1, 2, 1, 2, 1],
        pivot: 0,
    },
    "3x3 grid": { grid: ["121", "212", "121"], pivot: 0 },
    "5x5 grid": {
        grid: ["12321", "23132", "31213", "13231", "21312"],
        pivot: 0,
    },
};

function el<T extends HTMLElement>(id: string): T {
    const found = document.getElementById(id);
    if (!found) {
        throw new Error(`missing element #${id}`);
    }
    return found as T;
}

function gridRowsOf(instance: unknown): string[] | null {
    if (instance && typeof instance === "object" && "grid" in instance) {
        return (instance as { grid: string[] }).grid;
    }
    return null;
}

async function run(): Promise<void> {
    const api = new ApiClient(window.location.origin.startsWith("http")
        ? `${window.location.protocol}//${window.location.hostname}:8000`
        : "http://127.0.0.1:8000");
    const session = new GameSession(api);

    const board = el<HTMLDivElement>("board");
    const status = el<HTMLDivElement>("status");
    const errorBox = el<HTMLDivElement>("error");
    const colorBar = el<HTMLDivElement>("colors");
    const presetSelect = el<HTMLSelectElement>("preset");
    const instanceInput = el<HTMLTextAreaElement>("instance");
    const modeToggle = el<HTMLSelectElement>("mode");

    for (const name of Object.keys(PRESETS)) {
        const option = document.createElement("option");
        option.value = name;
        option.textContent = name;
        presetSelect.appendChild(option);
    }
    presetSelect.addEventListener("change", () => {
        instanceInput.value = JSON.stringify(PRESETS[presetSelect.value], null, 1);
    });
    presetSelect.dispatchEvent(new Event("change"));

    let selected: number | null = null;
    let grid: string[] | null = null;

    function repaint(): void {
        const view = session.state.view;
        if (!view) {
            return;
        }
        const hinted = new Set<number>();
        const hint = session.state.hint;
        if (hint && hint.move) {
            hinted.add(hint.move.v);
        }
        paint(buildRenderModel(view, grid, hinted), board, onVertexClick, selected);
        const parts = [
            `moves: ${view.moves_played}`,
            view.flooded ? "FLOODED" : "playing",
            `mode: ${session.state.mode}`,
        ];
        if (session.state.optimum !== null) {
            parts.push(`optimum from start: ${session.state.optimum}`);
        }
        if (hint) {
            const exactness = hint.exact ? "exact" : "approximate";
            parts.push(`hint: ${hint.remaining} to go (${exactness})`);
        }
        status.textContent = parts.join("  |  ");
        errorBox.textContent = session.state.error ?? "";
        colorBar.textContent = "";
        for (let c = 1; c <= view.c_max; c += 1) {
            const button = document.createElement("button");
            button.style.background = colorOf(c);
            button.className = "color-button";
            button.textContent = String(c);
            button.addEventListener("click", () => void playColor(c));
            colorBar.appendChild(button);
        }
    }

    function onVertexClick(vertex: number): void {
        const guard = session.canPlay(vertex);
        if (!guard.allowed) {
            session.state.error = guard.reason ?? "illegal move";
            repaint();
            return;
        }
        selected = vertex;
        session.state.error = null;
        repaint();
    }

    async function playColor(color: number): Promise<void> {
        const view = session.state.view;
        if (!view) {
            return;
        }
        const vertex = session.state.mode === "fixed"
            ? view.pivot
            : selected;
        if (vertex === null) {
            session.state.error = "select a cell first";
            repaint();
            return;
        }
        try {
            await session.play(vertex, color);
            selected = session.state.mode === "fixed" ? view.pivot : null;
        } catch {
            // error already surfaced in session state
        }
        repaint();
    }

    el<HTMLButtonElement>("new-game").addEventListener("click", () => {
        void (async () => {
            try {
                const instance = JSON.parse(instanceInput.value);
                grid = gridRowsOf(instance);
                await session.start(instance, modeToggle.value as Mode);
                selected = null;
                repaint();
            } catch (error) {
                errorBox.textContent = String(error);
            }
        })();
    });

    modeToggle.addEventListener("change", () => {
        if (session.state.view) {
            session.setMode(modeToggle.value as Mode);
            repaint();
        }
    });

    el<HTMLButtonElement>("hint").addEventListener("click", () => {
        void session.requestHint().then(repaint).catch((error) => {
            errorBox.textContent = String(error);
        });
    });

    el<HTMLButtonElement>("undo").addEventListener("click", () => {
        void session.undo().then(repaint).catch((error) => {
            errorBox.textContent = String(error);
        });
    });

    el<HTMLButtonElement>("reload").addEventListener("click", () => {
        void session.reload().then(repaint).catch((error) => {
            errorBox.textContent = String(error);
        });
    });
}

window.addEventListener("DOMContentLoaded", () => void run());
