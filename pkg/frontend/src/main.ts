// DOM wiring: drags, clicks and toggles become protocol requests; every
// response is fed through the session reducer and re-rendered.

import {
    displayFromTable,
    nearestBoundaryPoint,
    snapToGrid,
    toModel,
    fitViewport,
} from "./geometry.js";
import {
    ApiResponse,
    ClassificationReport,
    GridReportJson,
    Request,
    TableJson,
    TableReport,
    TilesReport,
    TrajectoryReport,
    callApi,
    edgePointAddress,
} from "./protocol.js";
import { SessionEvent, SessionState, apply, initialState } from "./session.js";
import { renderBadges, renderPhasePanel, renderScene } from "./render.js";

const API_BASE = "";

let state: SessionState = initialState();
const eventLog: SessionEvent[] = [];

const sceneEl = document.querySelector("#scene") as HTMLDivElement;
const phaseEl = document.querySelector("#phase") as HTMLDivElement;
const badgeEl = document.querySelector("#badges") as HTMLDivElement;
const tableSelect = document.querySelector("#table-select") as HTMLSelectElement;
const cgridToggle = document.querySelector("#toggle-cgrid") as HTMLInputElement;
const tilesToggle = document.querySelector("#toggle-tiles") as HTMLInputElement;
const snapInput = document.querySelector("#snap-den") as HTMLInputElement;
const classifyButton = document.querySelector("#classify") as HTMLButtonElement;
const kiteButton = document.querySelector("#kite-orbit") as HTMLButtonElement;

function dispatch(ev: SessionEvent): void {
    eventLog.push(ev);
    state = apply(state, ev);
    draw();
}

function draw(): void {
    sceneEl.innerHTML = renderScene(state);
    phaseEl.innerHTML = renderPhasePanel(state);
    badgeEl.textContent = renderBadges(state);
    attachDragHandlers();
}

async function request(req: Request): Promise<ApiResponse> {
    return callApi(API_BASE, req);
}

async function loadTable(req: Request): Promise<void> {
    const resp = await request(req);
    if (resp.ok) {
        dispatch({ kind: "table_loaded", report: resp.result as TableReport });
        void refreshOverlays();
    } else {
        dispatch({ kind: "table_rejected", error: resp.error ?? "unknown" });
    }
}

async function refreshOverlays(): Promise<void> {
    if (state.overlays.cgrid && !state.inflight.cgrid) {
        dispatch({ kind: "request_started", what: "cgrid" });
        const resp = await request({ op: "cgrid", params: {} });
        if (resp.ok) dispatch({ kind: "cgrid_loaded", report: resp.result as GridReportJson });
        else dispatch({ kind: "request_failed", what: "cgrid", error: resp.error ?? "" });
    }
    if (state.overlays.tiles && !state.inflight.tiles) {
        dispatch({ kind: "request_started", what: "tiles" });
        const resp = await request({ op: "tiles", params: {} });
        if (resp.ok) dispatch({ kind: "tiles_loaded", report: resp.result as TilesReport });
        else dispatch({ kind: "request_failed", what: "tiles", error: resp.error ?? "" });
    }
}

async function classify(): Promise<void> {
    dispatch({ kind: "request_started", what: "classify" });
    const resp = await request({ op: "classify", params: { samples: 200, sample_steps: 20000 } });
    if (resp.ok) dispatch({ kind: "classified", report: resp.result as ClassificationReport });
    else dispatch({ kind: "request_failed", what: "classify", error: resp.error ?? "" });
}

async function seedOrbit(first: string, second: string): Promise<void> {
    dispatch({ kind: "request_started", what: "orbit" });
    const resp = await request({
        op: "orbit",
        params: { seed: [first, second], max_steps: 20000 },
    });
    if (resp.ok) dispatch({ kind: "orbit_loaded", report: resp.result as TrajectoryReport });
    else dispatch({ kind: "request_failed", what: "orbit", error: resp.error ?? "" });
}

function attachDragHandlers(): void {
    const svg = sceneEl.querySelector("svg");
    if (!svg || !state.table) return;
    const display = displayFromTable(state.table.table);
    const polys = state.table.single_table ? [display.minus] : [display.minus, display.plus];
    const viewport = fitViewport(polys, 640);

    svg.addEventListener("click", (ev) => {
        const target = ev.target as Element;
        if (target.classList.contains("draggable")) return;
        const rect = svg.getBoundingClientRect();
        const [mx, my] = toModel(viewport, ev.clientX - rect.left, ev.clientY - rect.top);
        const hit = nearestBoundaryPoint(
            state.table!.table, display, mx, my, state.snapDenominator,
            state.table!.single_table);
        if (!hit) return;
        const address = edgePointAddress(
            state.pendingSeed && state.table!.single_table
                ? (state.pendingSeed.startsWith("minus") ? "plus" : "minus")
                : hit.table,
            hit.edge, hit.tNum, hit.tDen);
        if (!state.pendingSeed) {
            dispatch({ kind: "seed_first_click", at: address });
        } else {
            const first = state.pendingSeed;
            void seedOrbit(first, address);
        }
    });

    for (const handle of svg.querySelectorAll("circle.draggable")) {
        handle.addEventListener("mousedown", (down) => {
            down.preventDefault();
            const [polyIdx, vertIdx] = (handle.getAttribute("data-vertex") ?? "0:0")
                .split(":").map(Number);
            const move = (ev: MouseEvent) => {
                const rect = svg.getBoundingClientRect();
                const [mx, my] = toModel(viewport, ev.clientX - rect.left, ev.clientY - rect.top);
                const snapped = snapToGrid(mx, my, state.snapDenominator);
                const side = polyIdx === 0 ? "minus" : "plus";
                let table: TableJson;
                try {
                    table = JSON.parse(JSON.stringify(state.table!.table));
                    const poly = side === "minus" ? table.minus : table.plus!;
                    poly.vertices[vertIdx!] = snapped;
                } catch {
                    return;
                }
                void loadTable({ op: "set_table", table });
            };
            const up = (ev: MouseEvent) => {
                window.removeEventListener("mouseup", up);
                move(ev);
            };
            window.addEventListener("mouseup", up);
        });
    }
}

tableSelect.addEventListener("change", () => {
    void loadTable({ op: "set_table", builtin: tableSelect.value });
});
cgridToggle.addEventListener("change", () => {
    dispatch({ kind: "toggle_overlay", overlay: "cgrid", on: cgridToggle.checked });
    void refreshOverlays();
});
tilesToggle.addEventListener("change", () => {
    dispatch({ kind: "toggle_overlay", overlay: "tiles", on: tilesToggle.checked });
    void refreshOverlays();
});
snapInput.addEventListener("change", () => {
    const den = Math.max(1, Math.floor(Number(snapInput.value)));
    dispatch({ kind: "snap_changed", denominator: den });
});
classifyButton.addEventListener("click", () => void classify());
kiteButton.addEventListener("click", async () => {
    await loadTable({ op: "set_table", builtin: "crooked-kite 3/2 5/4" });
    const resp = await request({ op: "kite_orbit", params: { X: "3/2", Y: "5/4" } });
    if (resp.ok) {
        const orbit = (resp.result as { orbit: { at: string }[] }).orbit;
        if (orbit.length >= 2) void seedOrbit(orbit[0]!.at, orbit[1]!.at);
    }
});

// session recording hook for the replay tests
(window as unknown as { __eventLog: SessionEvent[] }).__eventLog = eventLog;

void loadTable({ op: "set_table", builtin: "quad" });
