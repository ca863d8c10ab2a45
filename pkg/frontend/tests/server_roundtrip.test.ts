// Integration: the explorer's protocol against a live server. Spawns
// `python -m symplectic_billiards.cli serve` and reproduces the primary
// verdicts for the quad and the necktie through the wire format alone.

import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { spawn, ChildProcess } from "node:child_process";

import {
    ApiResponse,
    ClassificationReport,
    Request,
    TableReport,
    TrajectoryReport,
    callApi,
} from "../src/protocol.js";

const PORT = 18000 + Math.floor(Math.random() * 2000);
const BASE = `http://127.0.0.1:${PORT}`;
let server: ChildProcess;

async function up(): Promise<boolean> {
    try {
        const resp = await fetch(`${BASE}/health`);
        return resp.ok;
    } catch {
        return false;
    }
}

beforeAll(async () => {
    server = spawn("python3", ["-m", "symplectic_billiards.cli", "serve",
                               "--port", String(PORT)],
                   { stdio: "ignore" });
    for (let i = 0; i < 100; i++) {
        if (await up()) return;
        await new Promise((r) => setTimeout(r, 100));
    }
    throw new Error("server did not come up");
}, 30000);

afterAll(() => {
    server.kill();
});

async function api(req: Request): Promise<ApiResponse> {
    return callApi(BASE, req);
}

describe("seed-and-classify round trip", () => {
    it("quad: BP with the critical-set bound", async () => {
        const table = await api({ op: "set_table", builtin: "quad" });
        expect(table.ok).toBe(true);
        expect((table.result as TableReport).single_table).toBe(true);

        const orbit = await api({
            op: "orbit",
            params: { seed: ["minus:1:1/2", "plus:2:1/3"], max_steps: 1000 },
        });
        expect(orbit.ok).toBe(true);
        const traj = orbit.result as TrajectoryReport;
        expect(traj.period).toBe(36);
        expect(traj.points[0]!.point).toEqual(["1/2", "0/1"]);

        const verdict = await api({ op: "classify", params: { samples: 200 } });
        expect(verdict.ok).toBe(true);
        const c = verdict.result as ClassificationReport;
        expect(c.label).toBe("BP");
        expect(c.bound).toBe(144);
        expect(c.samples["non_periodic"]).toBe(0);
    }, 120000);

    it("necktie: no periodic orbit through the protocol", async () => {
        const table = await api({ op: "set_table", builtin: "necktie" });
        expect(table.ok).toBe(true);

        const orbit = await api({
            op: "orbit",
            params: { seed: ["minus:2:1/3", "plus:1:1/7"], max_steps: 100000 },
        });
        expect(orbit.ok).toBe(true);
        expect((orbit.result as TrajectoryReport).period).toBeNull();

        const verdict = await api({
            op: "classify",
            params: { samples: 100, sample_steps: 5000 },
        });
        expect(verdict.ok).toBe(true);
        const c = verdict.result as ClassificationReport;
        expect(c.label).toBe("NoPeriodicFoundUpTo");
        expect(c.samples["periodic"]).toBe(0);
    }, 120000);

    it("rejects a self-intersecting drag result inline", async () => {
        const bad = await api({
            op: "set_table",
            table: {
                minus: {
                    vertices: [["0/1", "0/1"], ["1/1", "1/1"], ["1/1", "0/1"], ["0/1", "1/1"]],
                },
                plus: null,
            },
        });
        expect(bad.ok).toBe(false);
        expect(String(bad.error)).toContain("intersect");
    });

    it("kite 6-orbit helper feeds a seedable orbit", async () => {
        await api({ op: "set_table", builtin: "crooked-kite 3/2 5/4" });
        const kite = await api({ op: "kite_orbit", params: { X: "3/2", Y: "5/4" } });
        expect(kite.ok).toBe(true);
        const pts = (kite.result as { orbit: { at: string }[] }).orbit;
        expect(pts).toHaveLength(6);
        const orbit = await api({
            op: "orbit",
            params: { seed: [pts[0]!.at, pts[1]!.at], max_steps: 100 },
        });
        expect(orbit.ok).toBe(true);
        expect((orbit.result as TrajectoryReport).period).toBe(6);
    }, 60000);
});
