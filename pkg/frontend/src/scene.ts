/** Fixed-camera isometric projection of unit-cube data plus SVG assembly. */

export interface Point3 {
    x: number;
    y: number;
    z: number;
}

export interface Bounds {
    max: [number, number, number];
}

const COS30 = Math.cos(Math.PI / 6);
const SIN30 = Math.sin(Math.PI / 6);

export const WIDTH = 640;
export const HEIGHT = 560;
const SCALE = 230;
const CX = WIDTH / 2;
const CY = HEIGHT / 2 + 110;

function fmt(v: number): string {
    return v.toFixed(2);
}

/** Project a point already normalized to [0,1]^3. */
export function project(p: Point3): [number, number] {
    const px = (p.x - p.y) * COS30 * SCALE;
    const py = -((p.x + p.y) * SIN30 + p.z * 1.05) * SCALE;
    return [CX + px, CY + py];
}

export class Scene {
    private parts: string[] = [];

    constructor(readonly bounds: Bounds) {}

    private norm(x: number, y: number, z: number): Point3 {
        const m = this.bounds.max;
        return { x: x / m[0], y: y / m[1], z: z / m[2] };
    }

    axes(labels: [string, string, string]): void {
        const origin = project({ x: 0, y: 0, z: 0 });
        const ends: Point3[] = [
            { x: 1.05, y: 0, z: 0 },
            { x: 0, y: 1.05, z: 0 },
            { x: 0, y: 0, z: 1.05 },
        ];
        ends.forEach((end, i) => {
            const [ex, ey] = project(end);
            this.parts.push(
                `<line x1="${fmt(origin[0])}" y1="${fmt(origin[1])}" x2="${fmt(ex)}" ` +
                `y2="${fmt(ey)}" stroke="#444" stroke-width="1"/>`);
            const anchor = i === 2 ? 'end' : 'middle';
            this.parts.push(
                `<text x="${fmt(ex)}" y="${fmt(ey - 6)}" font-size="13" fill="#222" ` +
                `text-anchor="${anchor}">${labels[i]}</text>`);
        });
    }

    point(x: number, y: number, z: number, color: string, r = 1.6): void {
        const [px, py] = project(this.norm(x, y, z));
        this.parts.push(
            `<circle cx="${fmt(px)}" cy="${fmt(py)}" r="${r}" fill="${color}" ` +
            `fill-opacity="0.75" class="pt ${colorClass(color)}"/>`);
    }

    polyline(pts: Array<[number, number, number]>, color: string): void {
        if (pts.length < 2) {
            return;
        }
        const coords = pts
            .map(([x, y, z]) => project(this.norm(x, y, z)))
            .map(([px, py]) => `${fmt(px)},${fmt(py)}`)
            .join(' ');
        this.parts.push(
            `<polyline points="${coords}" fill="none" stroke="${color}" ` +
            `stroke-width="0.8" stroke-opacity="0.8" class="${colorClass(color)}"/>`);
    }

    title(text: string): void {
        this.parts.push(
            `<text x="${WIDTH / 2}" y="24" font-size="16" fill="#111" ` +
            `text-anchor="middle">${text}</text>`);
    }

    render(): string {
        return [
            `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
            `viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
            `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
            ...this.parts,
            '</svg>',
        ].join('\n') + '\n';
    }
}

function colorClass(color: string): string {
    return 'c-' + color.replace('#', '');
}
