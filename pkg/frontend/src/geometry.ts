// Client-side input preparation: screen/model transforms, snapping drags
// to a rational grid, and locating boundary clicks as edge addresses.
// These feed requests; every displayed result still comes from the server.

import { TableJson, formatRational, parseRational } from "./protocol.js";

export interface Viewport {
    minX: number;
    minY: number;
    span: number; // square viewport in model units
    width: number; // pixels
}

export function fitViewport(display: [number, number][][], width: number): Viewport {
    const xs = display.flat().map((p) => p[0]);
    const ys = display.flat().map((p) => p[1]);
    const minX = Math.min(...xs);
    const maxX = Math.max(...xs);
    const minY = Math.min(...ys);
    const maxY = Math.max(...ys);
    const span = Math.max(maxX - minX, maxY - minY) * 1.12 + 1e-9;
    const pad = (span - (maxX - minX)) / 2;
    const padY = (span - (maxY - minY)) / 2;
    return { minX: minX - pad, minY: minY - padY, span, width };
}

export function toScreen(v: Viewport, x: number, y: number): [number, number] {
    return [
        ((x - v.minX) / v.span) * v.width,
        v.width - ((y - v.minY) / v.span) * v.width,
    ];
}

export function toModel(v: Viewport, sx: number, sy: number): [number, number] {
    return [
        v.minX + (sx / v.width) * v.span,
        v.minY + ((v.width - sy) / v.width) * v.span,
    ];
}

/** Snap a model point to the grid of multiples of 1/den, exactly. */
export function snapToGrid(x: number, y: number, den: number): [string, string] {
    const nx = Math.round(x * den);
    const ny = Math.round(y * den);
    return [formatRational(nx, den), formatRational(ny, den)];
}

export interface BoundaryHit {
    table: "minus" | "plus";
    edge: number;
    tNum: number;
    tDen: number;
    point: [number, number];
    distance: number;
}

/**
 * Nearest boundary point to a model-space click, with the edge parameter
 * snapped to k/den so the seed stays exactly rational.
 */
export function nearestBoundaryPoint(
    table: TableJson,
    display: { minus: [number, number][]; plus: [number, number][] },
    x: number,
    y: number,
    den: number,
    singleTable: boolean,
): BoundaryHit | null {
    let best: BoundaryHit | null = null;
    const sides: ("minus" | "plus")[] = singleTable ? ["minus"] : ["minus", "plus"];
    for (const side of sides) {
        const verts = display[side];
        const n = verts.length;
        for (let e = 0; e < n; e++) {
            const a = verts[e]!;
            const b = verts[(e + 1) % n]!;
            const dx = b[0] - a[0];
            const dy = b[1] - a[1];
            const len2 = dx * dx + dy * dy;
            let t = ((x - a[0]) * dx + (y - a[1]) * dy) / len2;
            t = Math.max(0, Math.min(1, t));
            let k = Math.round(t * den);
            k = Math.max(1, Math.min(den - 1, k)); // keep off the vertices
            const px = a[0] + (k / den) * dx;
            const py = a[1] + (k / den) * dy;
            const dist = Math.hypot(px - x, py - y);
            if (!best || dist < best.distance) {
                best = { table: side, edge: e, tNum: k, tDen: den, point: [px, py], distance: dist };
            }
        }
    }
    return best;
}

/** Replace one vertex in a table (exact strings), e.g. after a drag. */
export function withVertex(
    table: TableJson,
    side: "minus" | "plus",
    index: number,
    vertex: [string, string],
): TableJson {
    const clone: TableJson = JSON.parse(JSON.stringify(table));
    const poly = side === "minus" ? clone.minus : clone.plus;
    if (!poly) throw new Error("single tables have no plus polygon");
    poly.vertices[index] = vertex;
    return clone;
}

export function displayFromTable(table: TableJson): {
    minus: [number, number][];
    plus: [number, number][];
} {
    const conv = (poly: { vertices: [string, string][] } | null) =>
        (poly ? poly.vertices : []).map(
            (v) => [parseRational(v[0]), parseRational(v[1])] as [number, number],
        );
    const minus = conv(table.minus);
    const plus = table.plus ? conv(table.plus) : minus;
    return { minus, plus };
}
