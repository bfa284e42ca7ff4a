// Rendering split in two: a pure render model (testable anywhere) and a DOM
// painter.  Grid instances render as a grid; general graphs get a
// deterministic force-directed layout with component hulls.

import { View } from "./api.js";

export const PALETTE = [
    "#888888", // color ids are 1-based; index 0 is never used
    "#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231",
    "#911eb4", "#46f0f0", "#f032e6", "#bcf60c", "#fabebe",
];

export function colorOf(colorId: number): string {
    return PALETTE[colorId] ?? "#222222";
}

export interface CellModel {
    vertex: number;
    color: number;
    inPivotComponent: boolean;
    hinted: boolean;
}

export interface GridModel {
    kind: "grid";
    rows: number;
    cols: number;
    cells: CellModel[];
}

export interface NodeModel extends CellModel {
    x: number;
    y: number;
}

export interface GraphModel {
    kind: "graph";
    nodes: NodeModel[];
    edges: [number, number][];
    componentHulls: number[][];
}

export type RenderModel = GridModel | GraphModel;

function pivotComponent(view: View): Set<number> {
    if (view.pivot === null) {
        return new Set();
    }
    for (const component of view.components) {
        if (component.includes(view.pivot)) {
            return new Set(component);
        }
    }
    return new Set();
}

export function buildRenderModel(
    view: View,
    grid: string[] | null,
    hintedVertices: Set<number> = new Set(),
): RenderModel {
    const pivotSet = pivotComponent(view);
    const cell = (vertex: number): CellModel => ({
        vertex,
        color: view.colors[vertex] as number,
        inPivotComponent: pivotSet.has(vertex),
        hinted: hintedVertices.has(vertex),
    });
    if (grid && grid.length > 0 && grid.length * (grid[0] as string).length === view.vertices) {
        return {
            kind: "grid",
            rows: grid.length,
            cols: (grid[0] as string).length,
            cells: Array.from({ length: view.vertices }, (_, v) => cell(v)),
        };
    }
    const positions = forceLayout(view.vertices, view.edges);
    return {
        kind: "graph",
        nodes: positions.map((p, v) => ({ ...cell(v), x: p.x, y: p.y })),
        edges: view.edges,
        componentHulls: view.components.map((c) => [...c]),
    };
}

/** Deterministic spring relaxation from a circular start; no randomness so a
 * reload paints the identical picture. */
export function forceLayout(
    n: number,
    edges: [number, number][],
    iterations = 120,
): { x: number; y: number }[] {
    const pos = Array.from({ length: n }, (_, v) => ({
        x: Math.cos((2 * Math.PI * v) / Math.max(n, 1)),
        y: Math.sin((2 * Math.PI * v) / Math.max(n, 1)),
    }));
    if (n <= 1) {
        return pos.map(() => ({ x: 0, y: 0 }));
    }
    const spring = 0.35;
    const repulse = 0.9 / n;
    for (let step = 0; step < iterations; step += 1) {
        const force = pos.map(() => ({ x: 0, y: 0 }));
        for (let a = 0; a < n; a += 1) {
            for (let b = a + 1; b < n; b += 1) {
                const dx = (pos[a]!.x - pos[b]!.x) || 1e-4;
                const dy = (pos[a]!.y - pos[b]!.y) || 1e-4;
                const d2 = dx * dx + dy * dy;
                const push = repulse / d2;
                force[a]!.x += dx * push;
                force[a]!.y += dy * push;
                force[b]!.x -= dx * push;
                force[b]!.y -= dy * push;
            }
        }
        for (const [a, b] of edges) {
            const dx = pos[b]!.x - pos[a]!.x;
            const dy = pos[b]!.y - pos[a]!.y;
            force[a]!.x += dx * spring;
            force[a]!.y += dy * spring;
            force[b]!.x -= dx * spring;
            force[b]!.y -= dy * spring;
        }
        const damp = 0.08;
        for (let v = 0; v < n; v += 1) {
            pos[v]!.x += force[v]!.x * damp;
            pos[v]!.y += force[v]!.y * damp;
        }
    }
    // normalize into the unit box
    const xs = pos.map((p) => p.x);
    const ys = pos.map((p) => p.y);
    const minX = Math.min(...xs), maxX = Math.max(...xs);
    const minY = Math.min(...ys), maxY = Math.max(...ys);
    const spanX = maxX - minX || 1;
    const spanY = maxY - minY || 1;
    return pos.map((p) => ({
        x: (p.x - minX) / spanX,
        y: (p.y - minY) / spanY,
    }));
}

const SVG_NS = "http://www.w3.org/2000/svg";

export function paint(
    model: RenderModel,
    container: HTMLElement,
    onVertexClick: (vertex: number) => void,
    selected: number | null,
): void {
    container.textContent = "";
    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("viewBox", "0 0 100 100");
    svg.classList.add("board-svg");
    if (model.kind === "grid") {
        const size = 100 / Math.max(model.rows, model.cols);
        for (const cell of model.cells) {
            const row = Math.floor(cell.vertex / model.cols);
            const col = cell.vertex % model.cols;
            const rect = document.createElementNS(SVG_NS, "rect");
            rect.setAttribute("x", String(col * size + 1));
            rect.setAttribute("y", String(row * size + 1));
            rect.setAttribute("width", String(size - 2));
            rect.setAttribute("height", String(size - 2));
            rect.setAttribute("fill", colorOf(cell.color));
            decorate(rect, cell, selected);
            rect.addEventListener("click", () => onVertexClick(cell.vertex));
            svg.appendChild(rect);
        }
    } else {
        const sx = (x: number): number => 8 + x * 84;
        const sy = (y: number): number => 8 + y * 84;
        for (const [a, b] of model.edges) {
            const na = model.nodes[a]!;
            const nb = model.nodes[b]!;
            const line = document.createElementNS(SVG_NS, "line");
            line.setAttribute("x1", String(sx(na.x)));
            line.setAttribute("y1", String(sy(na.y)));
            line.setAttribute("x2", String(sx(nb.x)));
            line.setAttribute("y2", String(sy(nb.y)));
            line.setAttribute("stroke", "#999");
            line.setAttribute("stroke-width", "0.6");
            svg.appendChild(line);
        }
        for (const hull of model.componentHulls) {
            if (hull.length < 2) {
                continue;
            }
            const poly = document.createElementNS(SVG_NS, "polygon");
            const points = hull
                .map((v) => model.nodes[v]!)
                .map((node) => `${sx(node.x)},${sy(node.y)}`)
                .join(" ");
            poly.setAttribute("points", points);
            poly.setAttribute("fill", colorOf(model.nodes[hull[0]!]!.color));
            poly.setAttribute("fill-opacity", "0.15");
            poly.setAttribute("stroke", "none");
            svg.appendChild(poly);
        }
        for (const node of model.nodes) {
            const circle = document.createElementNS(SVG_NS, "circle");
            circle.setAttribute("cx", String(sx(node.x)));
            circle.setAttribute("cy", String(sy(node.y)));
            circle.setAttribute("r", "4");
            circle.setAttribute("fill", colorOf(node.color));
            decorate(circle, node, selected);
            circle.addEventListener("click", () => onVertexClick(node.vertex));
            svg.appendChild(circle);
        }
    }
    container.appendChild(svg);
}

function decorate(el: Element, cell: CellModel, selected: number | null): void {
    el.classList.add("cell");
    if (cell.inPivotComponent) {
        el.classList.add("pivot-component");
    }
    if (cell.hinted) {
        el.classList.add("hinted");
    }
    if (selected === cell.vertex) {
        el.classList.add("selected");
    }
}
