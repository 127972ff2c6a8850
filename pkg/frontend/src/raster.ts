// Occupancy raster: the fold target for map deltas and snapshots.
// Pure functions only (no DOM), so replay tests run under node.

import type { GridSnapshot, MapDelta } from "./protocol.js";

export const UNKNOWN = 0;
export const FREE = 1;
export const OCCUPIED = 2;

export interface GridRaster {
  resolution: number;
  origin: [number, number];
  shape: [number, number];
  cells: Uint8Array; // indexed [ix * ny + iy]
}

export function blankRaster(delta: MapDelta): GridRaster {
  const [nx, ny] = delta.shape;
  return {
    resolution: delta.resolution,
    origin: [delta.origin[0], delta.origin[1]],
    shape: [nx, ny],
    cells: new Uint8Array(nx * ny),
  };
}

/** Apply one delta, copy-on-write; out-of-bounds cells are ignored. */
export function applyDelta(raster: GridRaster | null, delta: MapDelta): GridRaster {
  const base = raster ?? blankRaster(delta);
  const [nx, ny] = base.shape;
  const cells = base.cells.slice();
  for (const [ix, iy, v] of delta.cells) {
    if (ix < 0 || ix >= nx || iy < 0 || iy >= ny) {
      console.warn(`map delta cell out of bounds: (${ix}, ${iy})`);
      continue;
    }
    cells[ix * ny + iy] = v;
  }
  return { ...base, cells };
}

export function fromSnapshot(snap: GridSnapshot): GridRaster {
  const [nx, ny] = snap.shape;
  const cells = new Uint8Array(nx * ny);
  for (let ix = 0; ix < nx; ix++) {
    const row = snap.rows[ix] ?? "";
    for (let iy = 0; iy < ny; iy++) {
      cells[ix * ny + iy] = row.charCodeAt(iy) - 48;
    }
  }
  return {
    resolution: snap.resolution,
    origin: [snap.origin[0], snap.origin[1]],
    shape: [nx, ny],
    cells,
  };
}

export function rastersEqual(a: GridRaster | null, b: GridRaster | null): boolean {
  if (a === null || b === null) return a === b;
  if (a.shape[0] !== b.shape[0] || a.shape[1] !== b.shape[1]) return false;
  if (a.cells.length !== b.cells.length) return false;
  for (let i = 0; i < a.cells.length; i++) {
    if (a.cells[i] !== b.cells[i]) return false;
  }
  return true;
}

// Cell colors as RGBA tuples; image rows run top-to-bottom, so world y
// (up) maps to row (ny - 1 - iy).
const PALETTE: Record<number, [number, number, number, number]> = {
  [UNKNOWN]: [42, 44, 52, 255],
  [FREE]: [230, 228, 219, 255],
  [OCCUPIED]: [38, 48, 58, 255],
};

/** Rasterize to RGBA pixels (width = nx, height = ny), pure. */
export function rasterPixels(raster: GridRaster): Uint8ClampedArray<ArrayBuffer> {
  const [nx, ny] = raster.shape;
  const out = new Uint8ClampedArray(nx * ny * 4);
  for (let iy = 0; iy < ny; iy++) {
    const row = ny - 1 - iy;
    for (let ix = 0; ix < nx; ix++) {
      const [r, g, b, a] = PALETTE[raster.cells[ix * ny + iy]] ?? PALETTE[UNKNOWN];
      const o = (row * nx + ix) * 4;
      out[o] = r;
      out[o + 1] = g;
      out[o + 2] = b;
      out[o + 3] = a;
    }
  }
  return out;
}
