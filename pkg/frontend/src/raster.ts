import { StimulusLayout } from "./layout.js";

/**
 * Minimal drawing surface.  The app backs it with a canvas 2D context; the
 * tests back it with a plain byte buffer and read the pixels back, so the
 * painted geometry is checked without a browser.
 */
export interface RasterSurface {
  readonly width: number;
  readonly height: number;
  fillRect(x: number, y: number, w: number, h: number, gray: number): void;
}

export const BACKGROUND_GRAY = 128;
export const LINE_GRAY = 0;

/** Paint one trial: mid-gray field, three 1-device-pixel vertical lines. */
export function paintTrial(surface: RasterSurface, layout: StimulusLayout): void {
  surface.fillRect(0, 0, surface.width, surface.height, BACKGROUND_GRAY);
  for (const x of [layout.referenceX, layout.constantX, layout.comparisonX]) {
    surface.fillRect(x, layout.lineTopY, 1, layout.lineLength, LINE_GRAY);
  }
}

/** Paint the between-trials blank: field plus a small central fixation mark. */
export function paintFixation(surface: RasterSurface): void {
  surface.fillRect(0, 0, surface.width, surface.height, BACKGROUND_GRAY);
  const cx = Math.floor(surface.width / 2);
  const cy = Math.floor(surface.height / 2);
  surface.fillRect(cx - 3, cy, 7, 1, LINE_GRAY);
  surface.fillRect(cx, cy - 3, 1, 7, LINE_GRAY);
}

/** Software surface: one byte per pixel, row-major. */
export class BufferSurface implements RasterSurface {
  readonly data: Uint8Array;

  constructor(
    readonly width: number,
    readonly height: number,
    fill: number = BACKGROUND_GRAY,
  ) {
    this.data = new Uint8Array(width * height).fill(fill);
  }

  fillRect(x: number, y: number, w: number, h: number, gray: number): void {
    const x0 = Math.max(0, x);
    const y0 = Math.max(0, y);
    const x1 = Math.min(this.width, x + w);
    const y1 = Math.min(this.height, y + h);
    for (let yy = y0; yy < y1; yy++) {
      for (let xx = x0; xx < x1; xx++) {
        this.data[yy * this.width + xx] = gray;
      }
    }
  }

  pixel(x: number, y: number): number {
    const v = this.data[y * this.width + x];
    if (v === undefined) throw new Error(`pixel (${x}, ${y}) out of range`);
    return v;
  }

  /** Columns that contain at least one line-colored pixel. */
  drawnColumns(): number[] {
    const cols: number[] = [];
    for (let x = 0; x < this.width; x++) {
      for (let y = 0; y < this.height; y++) {
        if (this.pixel(x, y) === LINE_GRAY) {
          cols.push(x);
          break;
        }
      }
    }
    return cols;
  }
}
