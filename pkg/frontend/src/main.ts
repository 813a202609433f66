import { writeFileSync } from 'node:fs';
import { EmptyData, SchemaMismatch } from './csv.js';
import { FIGURE_IDS, FigureId, PlotSpec, renderFigure } from './figures.js';

const USAGE =
    'usage: plotviz --figure fig1|fig2|fig3|fig4 --in data.csv [--in more.csv] --out figure.svg';

export function parseArgs(argv: string[]): PlotSpec {
    let figure: string | null = null;
    const inputs: string[] = [];
    let output: string | null = null;
    for (let i = 0; i < argv.length; i++) {
        const flag = argv[i];
        const value = argv[i + 1];
        if (flag === '--figure' || flag === '--in' || flag === '--out') {
            if (value === undefined) {
                throw new UsageError(`${flag} needs a value\n${USAGE}`);
            }
            if (flag === '--figure') {
                figure = value;
            } else if (flag === '--in') {
                inputs.push(value);
            } else {
                output = value;
            }
            i++;
        } else {
            throw new UsageError(`unknown flag ${flag}\n${USAGE}`);
        }
    }
    if (figure === null || output === null || inputs.length === 0) {
        throw new UsageError(USAGE);
    }
    if (!FIGURE_IDS.includes(figure as FigureId)) {
        throw new UsageError(`--figure must be one of ${FIGURE_IDS.join(', ')}`);
    }
    return { figure: figure as FigureId, inputs, output };
}

export class UsageError extends Error {}

export function main(argv: string[]): number {
    let spec: PlotSpec;
    try {
        spec = parseArgs(argv);
    } catch (err) {
        if (err instanceof UsageError) {
            console.error(err.message);
            return 2;
        }
        throw err;
    }
    try {
        const svg = renderFigure(spec);
        writeFileSync(spec.output, svg, 'utf-8');
        console.log(`FIGURE=${spec.figure}`);
        console.log(`OUT=${spec.output}`);
        return 0;
    } catch (err) {
        if (err instanceof SchemaMismatch || err instanceof EmptyData) {
            console.error(`error: ${err.message}`);
            return 1;
        }
        throw err;
    }
}

if (process.argv[1] && process.argv[1].endsWith('main.js')) {
    process.exit(main(process.argv.slice(2)));
}
