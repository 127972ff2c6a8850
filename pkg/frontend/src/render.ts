// Canvas drawing: occupancy raster with the robot pose marker, and the
// latest photo decoded from its PGM bytes.

import { parsePgm } from "./pgm.js";
import { GridRaster, rasterPixels } from "./raster.js";

export function drawMap(
  canvas: HTMLCanvasElement,
  raster: GridRaster | null,
  pose: [number, number, number] | null,
): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  ctx.fillStyle = "#1b1c22";
  ctx.fillRect(0, 0, canvas.width, canvas.height);
  if (!raster) return;
  const [nx, ny] = raster.shape;
  const off = new OffscreenCanvas(nx, ny);
  const offCtx = off.getContext("2d")!;
  offCtx.putImageData(new ImageData(rasterPixels(raster), nx, ny), 0, 0);
  const scale = Math.min(canvas.width / nx, canvas.height / ny);
  const w = nx * scale;
  const h = ny * scale;
  const left = (canvas.width - w) / 2;
  const top = (canvas.height - h) / 2;
  ctx.imageSmoothingEnabled = false;
  ctx.drawImage(off, left, top, w, h);

  if (pose) {
    const [wx, wy, theta] = pose;
    const px = left + ((wx - raster.origin[0]) / raster.resolution) * scale;
    const py = top + h - ((wy - raster.origin[1]) / raster.resolution) * scale;
    const r = Math.max(4, 0.26 / raster.resolution * scale);
    ctx.save();
    ctx.translate(px, py);
    ctx.rotate(-theta); // canvas y runs downward
    ctx.fillStyle = "#e4533b";
    ctx.beginPath();
    ctx.arc(0, 0, r, 0, 2 * Math.PI);
    ctx.fill();
    ctx.strokeStyle = "#ffd9cf";
    ctx.lineWidth = Math.max(1.5, r / 3);
    ctx.beginPath();
    ctx.moveTo(0, 0);
    ctx.lineTo(r * 1.8, 0); // heading arrow
    ctx.stroke();
    ctx.restore();
  }
}

export async function drawPhoto(canvas: HTMLCanvasElement, url: string): Promise<void> {
  const resp = await fetch(url);
  if (!resp.ok) throw new Error(`photo fetch failed: ${resp.status}`);
  const image = parsePgm(await resp.arrayBuffer());
  const rgba = new Uint8ClampedArray(new ArrayBuffer(image.width * image.height * 4));
  for (let i = 0; i < image.pixels.length; i++) {
    const v = image.pixels[i];
    rgba[i * 4] = v;
    rgba[i * 4 + 1] = v;
    rgba[i * 4 + 2] = v;
    rgba[i * 4 + 3] = 255;
  }
  const off = new OffscreenCanvas(image.width, image.height);
  off.getContext("2d")!.putImageData(new ImageData(rgba, image.width, image.height), 0, 0);
  const ctx = canvas.getContext("2d")!;
  ctx.imageSmoothingEnabled = false;
  ctx.fillStyle = "#1b1c22";
  ctx.fillRect(0, 0, canvas.width, canvas.height);
  const scale = Math.min(canvas.width / image.width, canvas.height / image.height);
  ctx.drawImage(off, (canvas.width - image.width * scale) / 2,
    (canvas.height - image.height * scale) / 2,
    image.width * scale, image.height * scale);
}
