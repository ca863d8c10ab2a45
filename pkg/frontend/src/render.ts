// SVG rendering of a session state. Pure: the output string depends only
// on the state (and the fixed styling below), so replayed sessions render
// byte-identical screens.

import { fitViewport, toScreen, Viewport, displayFromTable } from "./geometry.js";
import { parseRational } from "./protocol.js";
import { SessionState, periodBadge, verdictBadge } from "./session.js";

const EVEN = "#1f77b4";
const ODD = "#d62728";
const GRID = "#555555";
const PENDING = "#2ca02c";

function fmt(x: number): string {
    return x.toFixed(3);
}

export function renderScene(state: SessionState, width = 640): string {
    if (!state.table) {
        return `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${width}"></svg>`;
    }
    const display = displayFromTable(state.table.table);
    const single = state.table.single_table;
    const polys = single ? [display.minus] : [display.minus, display.plus];
    const v = fitViewport(polys, width);
    const parts: string[] = [];
    for (const [pi, poly] of polys.entries()) {
        const pts = poly
            .map((p) => toScreen(v, p[0], p[1]))
            .map((p) => `${fmt(p[0])},${fmt(p[1])}`)
            .join(" ");
        parts.push(
            `<polygon points="${pts}" fill="none" stroke="#000" stroke-width="2" data-poly="${pi}"/>`,
        );
        for (const [vi, p] of poly.entries()) {
            const [sx, sy] = toScreen(v, p[0], p[1]);
            parts.push(
                `<circle cx="${fmt(sx)}" cy="${fmt(sy)}" r="5" fill="#000" ` +
                `data-vertex="${pi}:${vi}" class="draggable"/>`,
            );
        }
    }
    if (state.orbit) {
        const pts = state.orbit.points.map((p) => p.display);
        for (const [parity, color] of [[0, EVEN], [1, ODD]] as const) {
            const part = pts.filter((_, i) => i % 2 === parity);
            if (part.length >= 2) {
                const line = part
                    .map((p) => toScreen(v, p[0], p[1]))
                    .map((p) => `${fmt(p[0])},${fmt(p[1])}`)
                    .join(" ");
                parts.push(
                    `<polyline points="${line}" fill="none" stroke="${color}" stroke-width="1.4"/>`,
                );
            }
            for (const p of part) {
                const [sx, sy] = toScreen(v, p[0], p[1]);
                parts.push(`<circle cx="${fmt(sx)}" cy="${fmt(sy)}" r="2.5" fill="${color}"/>`);
            }
        }
    }
    if (state.pendingSeed) {
        parts.push(`<text x="8" y="${width - 10}" fill="${PENDING}">seed: ${state.pendingSeed}</text>`);
    }
    return (
        `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${width}" ` +
        `viewBox="0 0 ${width} ${width}">` +
        parts.join("") +
        `</svg>`
    );
}

/** The phase-space panel: components in edge-parameter coordinates. */
export function renderPhasePanel(state: SessionState, width = 640): string {
    if (!state.table) {
        return `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${width}"></svg>`;
    }
    const display = displayFromTable(state.table.table);
    const n0 = display.minus.length;
    const n1 = display.plus.length;
    const gap = 0.6;
    const spanX = n0 + n1 + gap;
    const spanY = Math.max(n0, n1);
    const scale = width / Math.max(spanX, spanY);
    const parts: string[] = [];
    const panel = (tx: 0 | 1, xOff: number, nA: number, nB: number) => {
        const X = (x: number) => fmt((xOff + x) * scale);
        const Y = (y: number) => fmt(width - y * scale);
        if (state.overlays.tiles && state.tiles) {
            for (const t of state.tiles.tiles) {
                if ((t.x_table === "minus" ? 0 : 1) !== tx) continue;
                const x0 = t.x_edge + parseRational(t.x[0]);
                const x1 = t.x_edge + parseRational(t.x[1]);
                const y0 = t.y_edge + parseRational(t.y[0]);
                const y1 = t.y_edge + parseRational(t.y[1]);
                parts.push(
                    `<rect x="${X(x0)}" y="${Y(y1)}" width="${fmt((x1 - x0) * scale)}" ` +
                    `height="${fmt((y1 - y0) * scale)}" fill="#fff" stroke="#999" stroke-width="0.5"/>`,
                );
            }
        }
        if (state.overlays.cgrid && state.cgrid) {
            for (const at of state.cgrid.vertical[tx] ?? []) {
                const [, edge, t] = at.split(":");
                const x = Number(edge) + parseRational(t!);
                parts.push(
                    `<line x1="${X(x)}" y1="${Y(0)}" x2="${X(x)}" y2="${Y(nB)}" ` +
                    `stroke="${GRID}" stroke-width="0.6"/>`,
                );
            }
            for (const at of state.cgrid.horizontal[tx] ?? []) {
                const [, edge, t] = at.split(":");
                const y = Number(edge) + parseRational(t!);
                parts.push(
                    `<line x1="${X(0)}" y1="${Y(y)}" x2="${X(nA)}" y2="${Y(y)}" ` +
                    `stroke="${GRID}" stroke-width="0.6"/>`,
                );
            }
        }
        for (let i = 0; i <= nA; i++) {
            parts.push(
                `<line x1="${X(i)}" y1="${Y(0)}" x2="${X(i)}" y2="${Y(nB)}" stroke="#000" stroke-width="1"/>`,
            );
        }
        for (let j = 0; j <= nB; j++) {
            parts.push(
                `<line x1="${X(0)}" y1="${Y(j)}" x2="${X(nA)}" y2="${Y(j)}" stroke="#000" stroke-width="1"/>`,
            );
        }
    };
    panel(0, 0, n0, n1);
    panel(1, n0 + gap, n1, n0);
    return (
        `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${width}" ` +
        `viewBox="0 0 ${width} ${width}">` +
        parts.join("") +
        `</svg>`
    );
}

export function renderBadges(state: SessionState): string {
    const bits = [verdictBadge(state)];
    const period = periodBadge(state);
    if (period) bits.push(period);
    if (state.message) bits.push(state.message);
    return bits.join(" | ");
}
