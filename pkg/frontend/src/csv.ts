import { readFileSync } from 'node:fs';

export class SchemaMismatch extends Error {}
export class EmptyData extends Error {}

export class Dataset {
    readonly header: string[];
    readonly rows: string[][];

    constructor(text: string) {
        const lines = text.split(/\r\n|\n/).filter((l) => l.trim() !== '');
        if (lines.length === 0) {
            throw new EmptyData('file has no header');
        }
        this.header = lines[0].split(',');
        this.rows = lines.slice(1).map((l) => l.split(','));
        for (const row of this.rows) {
            if (row.length !== this.header.length) {
                throw new SchemaMismatch(
                    `row has ${row.length} fields, header has ${this.header.length}`);
            }
        }
    }

    static fromFile(path: string): Dataset {
        return new Dataset(readFileSync(path, 'utf-8'));
    }

    get rowCount(): number {
        return this.rows.length;
    }

    has(name: string): boolean {
        return this.header.includes(name);
    }

    requireColumns(names: string[]): void {
        const missing = names.filter((n) => !this.has(n));
        if (missing.length > 0) {
            throw new SchemaMismatch(
                `missing columns [${missing.join(', ')}]; file has [${this.header.join(', ')}]`);
        }
    }

    /** Numeric column by name; throws on non-numeric cells. */
    numeric(name: string): Float64Array {
        const idx = this.header.indexOf(name);
        if (idx < 0) {
            throw new SchemaMismatch(`no column named ${name}`);
        }
        const out = new Float64Array(this.rows.length);
        for (let i = 0; i < this.rows.length; i++) {
            const v = Number(this.rows[i][idx]);
            if (Number.isNaN(v)) {
                throw new SchemaMismatch(`non-numeric value '${this.rows[i][idx]}' in ${name}`);
            }
            out[i] = v;
        }
        return out;
    }
}
