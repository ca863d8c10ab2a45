import { describe, expect, it } from "vitest";

import { renderBadges, renderPhasePanel, renderScene } from "../src/render.js";
import {
    SessionEvent,
    apply,
    initialState,
    replay,
    verdictBadge,
} from "../src/session.js";
import { TableReport, TrajectoryReport } from "../src/protocol.js";

const QUAD: TableReport = {
    kind: "table",
    table: {
        minus: {
            vertices: [
                ["0/1", "1/1"],
                ["0/1", "0/1"],
                ["1/1", "0/1"],
                ["3/1", "4/1"],
            ],
        },
        plus: null,
    },
    single_table: true,
    display: {
        minus: [[0, 1], [0, 0], [1, 0], [3, 4]],
        plus: [[0, 1], [0, 0], [1, 0], [3, 4]],
    },
};

const ORBIT: TrajectoryReport = {
    kind: "trajectory",
    points: [
        { at: "minus:1:1/2", point: ["1/2", "0/1"], display: [0.5, 0] },
        { at: "plus:2:1/3", point: ["5/3", "4/3"], display: [5 / 3, 4 / 3] },
        { at: "minus:3:1/4", point: ["9/4", "13/4"], display: [2.25, 3.25] },
    ],
    seed_index: 0,
    period: 36,
    forward_stop: null,
    backward_stop: null,
};

function script(): SessionEvent[] {
    return [
        { kind: "table_loaded", report: QUAD },
        { kind: "toggle_overlay", overlay: "cgrid", on: true },
        { kind: "seed_first_click", at: "minus:1:1/2" },
        { kind: "orbit_loaded", report: ORBIT },
        {
            kind: "classified",
            report: {
                kind: "classification", label: "BP", bound: 144,
                criterion: "critical_set_finite", samples: { max_period: 36 },
            },
        },
    ];
}

describe("session reducer", () => {
    it("is pure: inputs are never mutated", () => {
        const s0 = initialState();
        const frozen = JSON.stringify(s0);
        apply(s0, { kind: "table_loaded", report: QUAD });
        expect(JSON.stringify(s0)).toBe(frozen);
    });

    it("invalidates overlays when the table changes", () => {
        let s = replay(script());
        expect(s.orbit).not.toBeNull();
        s = apply(s, { kind: "table_loaded", report: QUAD });
        expect(s.orbit).toBeNull();
        expect(s.tiles).toBeNull();
        expect(s.cgrid).toBeNull();
        expect(s.classification).toBeNull();
    });

    it("keeps rejected edits visible without dropping state", () => {
        let s = replay(script());
        s = apply(s, { kind: "table_rejected", error: "boundary self-intersects" });
        expect(s.message).toContain("refused");
        expect(s.table).not.toBeNull();
        expect(s.orbit).not.toBeNull();
    });
});

describe("replay determinism", () => {
    it("replaying the same events renders byte-identical screens", () => {
        const a = replay(script());
        const b = replay(script());
        expect(renderScene(a)).toBe(renderScene(b));
        expect(renderPhasePanel(a)).toBe(renderPhasePanel(b));
        expect(renderBadges(a)).toBe(renderBadges(b));
    });

    it("rendering is a pure function of the state", () => {
        const s = replay(script());
        const first = renderScene(s);
        expect(renderScene(s)).toBe(first);
    });

    it("event order matters and is reproduced", () => {
        const reordered = script().reverse();
        const a = replay(script());
        const b = replay(reordered);
        expect(renderBadges(a)).not.toBe(renderBadges(b));
    });
});

describe("badges", () => {
    it("states the BP verdict with its bound", () => {
        const s = replay(script());
        expect(verdictBadge(s)).toContain("BP");
        expect(verdictBadge(s)).toContain("144");
        expect(renderBadges(s)).toContain("period 36");
    });
});
