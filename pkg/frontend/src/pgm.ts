// Minimal binary PGM (P5) reader; photos arrive in this format.

export interface GrayImage {
  width: number;
  height: number;
  pixels: Uint8Array;
}

export function parsePgm(data: ArrayBuffer | Uint8Array): GrayImage {
  const bytes = data instanceof Uint8Array ? data : new Uint8Array(data);
  let pos = 0;

  function token(): string {
    while (pos < bytes.length && isSpace(bytes[pos])) pos++;
    if (bytes[pos] === 0x23) { // '#' comment
      while (pos < bytes.length && bytes[pos] !== 0x0a) pos++;
      return token();
    }
    const start = pos;
    while (pos < bytes.length && !isSpace(bytes[pos])) pos++;
    return String.fromCharCode(...bytes.subarray(start, pos));
  }

  const magic = token();
  if (magic !== "P5") throw new Error(`not a binary PGM (magic ${magic})`);
  const width = parseInt(token(), 10);
  const height = parseInt(token(), 10);
  const maxval = parseInt(token(), 10);
  if (!(width > 0 && height > 0 && maxval > 0 && maxval < 256)) {
    throw new Error("bad PGM header");
  }
  pos++; // single whitespace after maxval
  const pixels = bytes.subarray(pos, pos + width * height);
  if (pixels.length !== width * height) throw new Error("truncated PGM body");
  return { width, height, pixels: new Uint8Array(pixels) };
}

function isSpace(b: number): boolean {
  return b === 0x20 || b === 0x09 || b === 0x0a || b === 0x0d;
}
