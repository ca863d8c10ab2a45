import { describe, expect, it } from "vitest";

import {
    displayFromTable,
    fitViewport,
    nearestBoundaryPoint,
    snapToGrid,
    toModel,
    toScreen,
    withVertex,
} from "../src/geometry.js";
import { TableJson, gcd } from "../src/protocol.js";

const SQUARE: TableJson = {
    minus: {
        vertices: [
            ["0/1", "0/1"],
            ["1/1", "0/1"],
            ["1/1", "1/1"],
            ["0/1", "1/1"],
        ],
    },
    plus: null,
};

describe("snapping", () => {
    it("snaps to the rational grid with denominators dividing the grid", () => {
        const [x, y] = snapToGrid(0.337, 0.912, 12);
        for (const coord of [x, y]) {
            const [, den] = coord.split("/").map(Number);
            expect(12 % den!).toBe(0);
        }
        expect(snapToGrid(0.337, 0.912, 12)).toEqual(["1/3", "11/12"]);
    });

    it("keeps snapped drags exact through withVertex", () => {
        const moved = withVertex(SQUARE, "minus", 2, snapToGrid(1.26, 0.99, 12));
        expect(moved.minus.vertices[2]).toEqual(["5/4", "1/1"]);
        // original untouched
        expect(SQUARE.minus.vertices[2]).toEqual(["1/1", "1/1"]);
    });
});

describe("viewport transforms", () => {
    it("round trips screen and model coordinates", () => {
        const display = displayFromTable(SQUARE);
        const v = fitViewport([display.minus], 640);
        for (const p of [[0.2, 0.7], [0.9, 0.1]] as const) {
            const [sx, sy] = toScreen(v, p[0], p[1]);
            const [mx, my] = toModel(v, sx, sy);
            expect(mx).toBeCloseTo(p[0], 9);
            expect(my).toBeCloseTo(p[1], 9);
        }
    });
});

describe("boundary clicks", () => {
    it("locates the nearest edge with an exact snapped parameter", () => {
        const display = displayFromTable(SQUARE);
        const hit = nearestBoundaryPoint(SQUARE, display, 0.26, -0.02, 12, true);
        expect(hit).not.toBeNull();
        expect(hit!.table).toBe("minus");
        expect(hit!.edge).toBe(0);
        expect(hit!.tNum / hit!.tDen).toBeCloseTo(0.25, 9);
        expect(12 % (hit!.tDen / gcd(hit!.tNum, hit!.tDen))).toBe(0);
    });

    it("never lands exactly on a vertex", () => {
        const display = displayFromTable(SQUARE);
        const hit = nearestBoundaryPoint(SQUARE, display, -0.01, -0.01, 12, true);
        expect(hit).not.toBeNull();
        expect(hit!.tNum).toBeGreaterThan(0);
        expect(hit!.tNum).toBeLessThan(hit!.tDen);
    });
});
