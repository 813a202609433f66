import assert from 'node:assert/strict';
import { mkdtempSync, readFileSync, writeFileSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';
import { test } from 'node:test';
import { renderFigure } from '../src/figures.js';
import { main } from '../src/main.js';

const FIXTURES = new URL('../../test/fixtures/', import.meta.url).pathname;

const SAMPLE = join(FIXTURES, 'sample2.csv');
const BOUNDARY = join(FIXTURES, 'boundary.csv');
const SWAP = join(FIXTURES, 'swap3.csv');
const QUDIT = join(FIXTURES, 'qudit64.csv');

function tmp(name: string): string {
    return join(mkdtempSync(join(tmpdir(), 'plotviz-')), name);
}

test('renders all four figure types from CLI-produced CSVs', () => {
    const cases: Array<[string, string[]]> = [
        ['fig1', [SAMPLE]],
        ['fig2', [SAMPLE, BOUNDARY]],
        ['fig3', [SWAP]],
        ['fig4', [QUDIT]],
    ];
    for (const [figure, inputs] of cases) {
        const svg = renderFigure({ figure: figure as never, inputs, output: '' });
        assert.ok(svg.startsWith('<svg'), `${figure} produces svg`);
        assert.ok(svg.includes('</svg>'), `${figure} closes svg`);
        assert.ok(svg.includes('<circle') || svg.includes('<polyline'),
            `${figure} has geometry`);
    }
});

test('fig3 contains two color classes when both fold flags present', () => {
    const svg = renderFigure({ figure: 'fig3', inputs: [SWAP], output: '' });
    assert.ok(svg.includes('c-d62728'), 'fold color present');
    assert.ok(svg.includes('c-1f77b4'), 'non-fold color present');
});

test('fig3 single fold class yields one color', () => {
    const raw = readFileSync(SWAP, 'utf-8').split('\n');
    const folded = [raw[0], ...raw.slice(1).filter((l) => l.endsWith(',1'))].join('\n');
    const path = tmp('folded.csv');
    writeFileSync(path, folded + '\n');
    const svg = renderFigure({ figure: 'fig3', inputs: [path], output: '' });
    assert.ok(svg.includes('c-d62728'));
    assert.ok(!svg.includes('c-1f77b4'));
});

test('schema mismatch is an error, never reinterpretation', () => {
    assert.equal(main(['--figure', 'fig1', '--in', SWAP, '--out', tmp('x.svg')]), 1);
    assert.equal(main(['--figure', 'fig3', '--in', SAMPLE, '--out', tmp('x.svg')]), 1);
    assert.equal(main(['--figure', 'fig4', '--in', SAMPLE, '--out', tmp('x.svg')]), 1);
});

test('empty data file errors and writes no image', () => {
    const empty = tmp('empty.csv');
    writeFileSync(empty, 'source,seed,n_ac_sq,n_ab_sq,n_abc_sq\n');
    const out = tmp('none.svg');
    assert.equal(main(['--figure', 'fig2', '--in', empty, '--out', out]), 1);
    assert.throws(() => readFileSync(out));
});

test('cli writes the svg and reports', () => {
    const out = tmp('fig2.svg');
    const code = main(['--figure', 'fig2', '--in', SAMPLE, '--in', BOUNDARY,
        '--out', out]);
    assert.equal(code, 0);
    const svg = readFileSync(out, 'utf-8');
    assert.ok(svg.includes('boundary') || svg.includes('<polyline'));
});

test('usage errors exit 2', () => {
    assert.equal(main([]), 2);
    assert.equal(main(['--figure', 'fig9', '--in', SAMPLE, '--out', 'x.svg']), 2);
    assert.equal(main(['--bogus']), 2);
});

test('rendering is deterministic', () => {
    const a = renderFigure({ figure: 'fig2', inputs: [SAMPLE, BOUNDARY], output: '' });
    const b = renderFigure({ figure: 'fig2', inputs: [SAMPLE, BOUNDARY], output: '' });
    assert.equal(a, b);
});
