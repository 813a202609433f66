import { Dataset, EmptyData, SchemaMismatch } from './csv.js';
import { Scene } from './scene.js';

export type FigureId = 'fig1' | 'fig2' | 'fig3' | 'fig4';

export const FIGURE_IDS: FigureId[] = ['fig1', 'fig2', 'fig3', 'fig4'];

const BLUE = '#1f77b4';
const RED = '#d62728';
const GRAY = '#555555';

export interface PlotSpec {
    figure: FigureId;
    inputs: string[];
    output: string;
}

/** Columns each figure insists on (mismatch is an error, never reinterpreted). */
export const REQUIRED_COLUMNS: Record<FigureId, string[]> = {
    fig1: ['c_ac_sq', 'c_ab_sq', 'c_abc_sq'],
    fig2: ['n_ac_sq', 'n_ab_sq', 'n_abc_sq'],
    fig3: ['d', 'theta', 'n_ac_sq', 'n_ab_sq', 'n_abc_sq', 'fold_flag'],
    fig4: ['n_ac', 'n_ab', 'n_abc'],
};

function maxOf(arrays: Float64Array[]): number {
    let m = 0;
    for (const a of arrays) {
        for (const v of a) {
            if (v > m) {
                m = v;
            }
        }
    }
    return m > 0 ? m : 1;
}

function checkNonEmpty(ds: Dataset, path: string): void {
    if (ds.rowCount === 0) {
        throw new EmptyData(`${path} has a header but no data rows`);
    }
}

/** Group row indices by equal values in the given column, preserving order. */
function groupBy(col: Float64Array): number[][] {
    const groups: number[][] = [];
    let current: number[] = [];
    for (let i = 0; i < col.length; i++) {
        if (current.length > 0 && col[i] !== col[current[current.length - 1]]) {
            groups.push(current);
            current = [];
        }
        current.push(i);
    }
    if (current.length > 0) {
        groups.push(current);
    }
    return groups;
}

function scatter(scene: Scene, x: Float64Array, y: Float64Array, z: Float64Array,
                 color: string | ((i: number) => string), r = 1.6): void {
    for (let i = 0; i < x.length; i++) {
        const c = typeof color === 'string' ? color : color(i);
        scene.point(x[i], y[i], z[i], c, r);
    }
}

function wireframe(scene: Scene, groupCol: Float64Array, x: Float64Array,
                   y: Float64Array, z: Float64Array,
                   color: string | ((i: number) => string)): void {
    for (const group of groupBy(groupCol)) {
        let run: Array<[number, number, number]> = [];
        let runColor: string | null = null;
        for (const i of group) {
            const c = typeof color === 'string' ? color : color(i);
            if (runColor !== null && c !== runColor) {
                scene.polyline(run, runColor);
                run = run.slice(-1);
            }
            runColor = c;
            run.push([x[i], y[i], z[i]]);
        }
        if (runColor !== null) {
            scene.polyline(run, runColor);
        }
    }
}

export function renderFigure(spec: PlotSpec): string {
    const datasets = spec.inputs.map((p) => {
        const ds = Dataset.fromFile(p);
        checkNonEmpty(ds, p);
        return ds;
    });
    if (datasets.length === 0) {
        throw new SchemaMismatch('at least one --in file is required');
    }
    switch (spec.figure) {
        case 'fig1':
            return renderTripleScatter(datasets, REQUIRED_COLUMNS.fig1,
                ['C2 A|C', 'C2 A|B', 'C2 A|BC'], 'Achievable concurrence triples');
        case 'fig2':
            return renderFig2(datasets);
        case 'fig3':
            return renderFig3(datasets);
        case 'fig4':
            return renderFig4(datasets);
    }
}

function renderTripleScatter(datasets: Dataset[], cols: string[],
                             labels: [string, string, string], title: string): string {
    for (const ds of datasets) {
        ds.requireColumns(cols);
    }
    const xs = datasets.map((ds) => ds.numeric(cols[0]));
    const ys = datasets.map((ds) => ds.numeric(cols[1]));
    const zs = datasets.map((ds) => ds.numeric(cols[2]));
    const m = maxOf([...xs, ...ys, ...zs]);
    const scene = new Scene({ max: [m, m, m] });
    scene.title(title);
    scene.axes(labels);
    datasets.forEach((_, k) => scatter(scene, xs[k], ys[k], zs[k], BLUE));
    return scene.render();
}

function renderFig2(datasets: Dataset[]): string {
    for (const ds of datasets) {
        ds.requireColumns(REQUIRED_COLUMNS.fig2);
    }
    const m = maxOf(datasets.flatMap((ds) =>
        REQUIRED_COLUMNS.fig2.map((c) => ds.numeric(c))));
    const scene = new Scene({ max: [m, m, m] });
    scene.title('Achievable negativity triples and boundary surface');
    scene.axes(['N2 A|C', 'N2 A|B', 'N2 A|BC']);
    for (const ds of datasets) {
        const x = ds.numeric('n_ac_sq');
        const y = ds.numeric('n_ab_sq');
        const z = ds.numeric('n_abc_sq');
        if (ds.has('a') && ds.has('b')) {
            wireframe(scene, ds.numeric('a'), x, y, z, GRAY);   // boundary grid
        } else {
            scatter(scene, x, y, z, BLUE);                       // sample cloud
        }
    }
    return scene.render();
}

function renderFig3(datasets: Dataset[]): string {
    for (const ds of datasets) {
        ds.requireColumns(REQUIRED_COLUMNS.fig3);
    }
    const m = maxOf(datasets.flatMap((ds) =>
        ['n_ac_sq', 'n_ab_sq', 'n_abc_sq'].map((c) => ds.numeric(c))));
    const scene = new Scene({ max: [m, m, m] });
    scene.title('Swap-family negativity surface (red: non-bounding fold)');
    scene.axes(['N2 A|C', 'N2 A|B', 'N2 A|BC']);
    for (const ds of datasets) {
        const x = ds.numeric('n_ac_sq');
        const y = ds.numeric('n_ab_sq');
        const z = ds.numeric('n_abc_sq');
        const fold = ds.numeric('fold_flag');
        const color = (i: number) => (fold[i] !== 0 ? RED : BLUE);
        wireframe(scene, ds.numeric('d'), x, y, z, color);
        scatter(scene, x, y, z, color, 1.8);
    }
    return scene.render();
}

function renderFig4(datasets: Dataset[]): string {
    for (const ds of datasets) {
        ds.requireColumns(REQUIRED_COLUMNS.fig4);
    }
    const m = maxOf(datasets.flatMap((ds) =>
        REQUIRED_COLUMNS.fig4.map((c) => ds.numeric(c))));
    const scene = new Scene({ max: [m, m, m] });
    scene.title('Large-D achievable negativities (unsquared)');
    scene.axes(['N A|C', 'N A|B', 'N A|BC']);
    for (const ds of datasets) {
        const x = ds.numeric('n_ac');
        const y = ds.numeric('n_ab');
        const z = ds.numeric('n_abc');
        if (ds.has('d')) {
            wireframe(scene, ds.numeric('d'), x, y, z, BLUE);
        }
        scatter(scene, x, y, z, BLUE);
    }
    return scene.render();
}
