// Wire types and helpers for the explorer protocol. One JSON request per
// call, {"ok": true, "result": ...} | {"ok": false, "error": ...} back.
// All dynamics happen on the server; the client only formats requests and
// reads exact "p/q" strings plus display floats out of responses.

export type Rational = string; // "p/q" with q > 0

export interface TableJson {
    minus: { vertices: [Rational, Rational][] };
    plus: { vertices: [Rational, Rational][] } | null;
}

export interface TableReport {
    kind: "table";
    table: TableJson;
    single_table: boolean;
    display: { minus: [number, number][]; plus: [number, number][] };
    note?: string;
}

export interface EdgePointJson {
    at: string; // "minus:2:3/7"
    point: [Rational, Rational];
    display: [number, number];
}

export interface TrajectoryReport {
    kind: "trajectory";
    points: EdgePointJson[];
    seed_index: number;
    period: number | null;
    forward_stop: string | null;
    backward_stop: string | null;
}

export interface GridReportJson {
    kind: "c_grid";
    line_counts: [number, number];
    vertical: string[][];
    horizontal: string[][];
}

export interface TileJson {
    x_table: "minus" | "plus";
    x_edge: number;
    x: [Rational, Rational];
    y_edge: number;
    y: [Rational, Rational];
    period: number | null;
    return_order: number | null;
    area: Rational;
}

export interface TilesReport {
    kind: "tiles";
    count: number;
    tiles: TileJson[];
}

export interface ClassificationReport {
    kind: "classification";
    label: string;
    bound: number | null;
    criterion: string | null;
    samples: Record<string, number>;
}

export type ApiResult =
    | TableReport
    | TrajectoryReport
    | GridReportJson
    | TilesReport
    | ClassificationReport
    | Record<string, unknown>;

export interface ApiResponse {
    ok: boolean;
    result?: ApiResult;
    error?: string;
    type?: string;
}

export type Request =
    | { op: "set_table"; table: TableJson }
    | { op: "set_table"; builtin: string }
    | { op: "step"; params: { pair: [string, string] } }
    | { op: "orbit"; params: { seed: [string, string]; max_steps: number } }
    | { op: "tiles"; params: { budget_c?: number } }
    | { op: "cgrid"; params: { budget_c?: number } }
    | { op: "classify"; params: Record<string, number> }
    | { op: "kite_orbit"; params: { X: string; Y: string } };

export function parseRational(text: Rational): number {
    const slash = text.indexOf("/");
    if (slash < 0) return Number(text);
    return Number(text.slice(0, slash)) / Number(text.slice(slash + 1));
}

export function formatRational(num: number, den: number): Rational {
    if (den <= 0) throw new Error("denominator must be positive");
    const g = gcd(Math.abs(num), den);
    return `${num / g}/${den / g}`;
}

export function gcd(a: number, b: number): number {
    while (b) {
        [a, b] = [b, a % b];
    }
    return a || 1;
}

export function edgePointAddress(
    table: "minus" | "plus",
    edge: number,
    tNum: number,
    tDen: number,
): string {
    return `${table}:${edge}:${formatRational(tNum, tDen)}`;
}

export async function callApi(base: string, req: Request): Promise<ApiResponse> {
    const resp = await fetch(`${base}/api`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(req),
    });
    return (await resp.json()) as ApiResponse;
}
