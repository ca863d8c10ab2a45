// Session state and its reducer. Rendering is a pure function of the
// state, and the state changes only through apply(); replaying a recorded
// event list therefore reproduces the exact same screens.

import {
    ClassificationReport,
    GridReportJson,
    TableReport,
    TilesReport,
    TrajectoryReport,
} from "./protocol.js";

export interface Overlays {
    cgrid: boolean;
    tiles: boolean;
}

export interface SessionState {
    table: TableReport | null;
    orbit: TrajectoryReport | null;
    cgrid: GridReportJson | null;
    tiles: TilesReport | null;
    classification: ClassificationReport | null;
    overlays: Overlays;
    pendingSeed: string | null; // first boundary click, waiting for the second
    inflight: Partial<Record<OverlayKind, boolean>>;
    message: string | null; // inline error / status
    snapDenominator: number;
}

export type OverlayKind = "orbit" | "cgrid" | "tiles" | "classify";

export type SessionEvent =
    | { kind: "table_loaded"; report: TableReport }
    | { kind: "table_rejected"; error: string }
    | { kind: "orbit_loaded"; report: TrajectoryReport }
    | { kind: "cgrid_loaded"; report: GridReportJson }
    | { kind: "tiles_loaded"; report: TilesReport }
    | { kind: "classified"; report: ClassificationReport }
    | { kind: "request_failed"; what: OverlayKind; error: string }
    | { kind: "request_started"; what: OverlayKind }
    | { kind: "seed_first_click"; at: string }
    | { kind: "seed_cleared" }
    | { kind: "toggle_overlay"; overlay: keyof Overlays; on: boolean }
    | { kind: "snap_changed"; denominator: number };

export function initialState(): SessionState {
    return {
        table: null,
        orbit: null,
        cgrid: null,
        tiles: null,
        classification: null,
        overlays: { cgrid: false, tiles: false },
        pendingSeed: null,
        inflight: {},
        message: null,
        snapDenominator: 12,
    };
}

/** Pure: the only way session state evolves. */
export function apply(state: SessionState, ev: SessionEvent): SessionState {
    const s: SessionState = { ...state, inflight: { ...state.inflight } };
    switch (ev.kind) {
        case "table_loaded":
            // a new table invalidates every computed overlay
            return {
                ...s,
                table: ev.report,
                orbit: null,
                cgrid: null,
                tiles: null,
                classification: null,
                pendingSeed: null,
                message: ev.report.note ?? null,
            };
        case "table_rejected":
            return { ...s, message: `edit refused: ${ev.error}` };
        case "orbit_loaded":
            s.inflight.orbit = false;
            return { ...s, orbit: ev.report, pendingSeed: null, message: null };
        case "cgrid_loaded":
            s.inflight.cgrid = false;
            return { ...s, cgrid: ev.report };
        case "tiles_loaded":
            s.inflight.tiles = false;
            return { ...s, tiles: ev.report };
        case "classified":
            s.inflight.classify = false;
            return { ...s, classification: ev.report };
        case "request_started":
            s.inflight[ev.what] = true;
            return s;
        case "request_failed":
            s.inflight[ev.what] = false;
            return { ...s, message: `${ev.what}: ${ev.error}` };
        case "seed_first_click":
            return { ...s, pendingSeed: ev.at, message: "click the second point" };
        case "seed_cleared":
            return { ...s, pendingSeed: null };
        case "toggle_overlay":
            return { ...s, overlays: { ...s.overlays, [ev.overlay]: ev.on } };
        case "snap_changed":
            return { ...s, snapDenominator: ev.denominator };
    }
}

export function replay(events: SessionEvent[]): SessionState {
    let state = initialState();
    for (const ev of events) {
        state = apply(state, ev);
    }
    return state;
}

/** Badge text for the classification verdict. */
export function verdictBadge(state: SessionState): string {
    const c = state.classification;
    if (!c) return "unclassified";
    if (c.label === "BP") return `BP: every orbit periodic, period <= ${c.bound}`;
    if (c.label === "FP_unbounded_evidence") return "FP evidence: periodic, no uniform bound";
    if (c.label === "NoPeriodicFoundUpTo")
        return `no periodic orbit within ${c.samples["steps"]} steps`;
    if (c.label === "IsolatedOrbitFound") return "isolated periodic orbit found";
    return "inconclusive";
}

/** Period badge for the current orbit. */
export function periodBadge(state: SessionState): string {
    const o = state.orbit;
    if (!o) return "";
    if (o.period !== null) return `period ${o.period}`;
    if (o.forward_stop === "parallel_edges") return "parallel edges: map undefined";
    if (o.forward_stop === "hits_vertex") return "orbit hits a vertex";
    if (o.forward_stop === null) return "no period within budget";
    return `stopped: ${o.forward_stop}`;
}
