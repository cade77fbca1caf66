import { exportJsonl } from "./export.js";
import {
  DisplayError,
  assertIntegerDevicePixelRatio,
  computeLayout,
  DEFAULT_LINE_LENGTH,
} from "./layout.js";
import { BACKGROUND_GRAY, RasterSurface, paintFixation, paintTrial } from "./raster.js";
import { parseSchedule } from "./schedule.js";
import { Session } from "./session.js";
import { TrialSchedule } from "./types.js";

const INTER_TRIAL_MS = 500;
const CANVAS_CSS_WIDTH = 480;
const CANVAS_CSS_HEIGHT = 280;

/** Canvas adapter: same drawing interface the tests exercise in software. */
class CanvasSurface implements RasterSurface {
  constructor(
    private readonly ctx: CanvasRenderingContext2D,
    readonly width: number,
    readonly height: number,
  ) {}

  fillRect(x: number, y: number, w: number, h: number, gray: number): void {
    this.ctx.fillStyle = `rgb(${gray},${gray},${gray})`;
    this.ctx.fillRect(x, y, w, h);
  }
}

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
}

function setup(): void {
  const fileInput = byId<HTMLInputElement>("schedule-file");
  const status = byId<HTMLParagraphElement>("status");
  const canvas = byId<HTMLCanvasElement>("stimulus");
  const downloadButton = byId<HTMLButtonElement>("download");

  const dpr = window.devicePixelRatio || 1;
  try {
    assertIntegerDevicePixelRatio(dpr);
  } catch (e) {
    status.textContent = (e as Error).message;
    fileInput.disabled = true;
    return;
  }

  // the surface lives on the device pixel grid; CSS size only scales the
  // element box, never the drawn pixels
  canvas.width = CANVAS_CSS_WIDTH * dpr;
  canvas.height = CANVAS_CSS_HEIGHT * dpr;
  canvas.style.width = `${CANVAS_CSS_WIDTH}px`;
  canvas.style.height = `${CANVAS_CSS_HEIGHT}px`;
  const ctx = canvas.getContext("2d");
  if (!ctx) {
    status.textContent = "canvas 2D context unavailable";
    return;
  }
  ctx.imageSmoothingEnabled = false;
  const surface = new CanvasSurface(ctx, canvas.width, canvas.height);
  surface.fillRect(0, 0, surface.width, surface.height, BACKGROUND_GRAY);

  let session: Session | null = null;
  let schedule: TrialSchedule | null = null;

  function showTrial(): void {
    if (!session) return;
    const trial = session.currentTrial();
    if (!trial) return;
    try {
      paintTrial(surface, computeLayout(trial, surface.width, surface.height,
        DEFAULT_LINE_LENGTH * dpr));
    } catch (e) {
      if (e instanceof DisplayError) {
        status.textContent = e.message;
        session = null;
        return;
      }
      throw e;
    }
    status.textContent =
      `trial ${session.trialsDone + 1} / ${session.trialsTotal} - ` +
      "which line is closer to the center one? (left/right arrow)";
  }

  function finish(): void {
    if (!session || !schedule) return;
    surface.fillRect(0, 0, surface.width, surface.height, BACKGROUND_GRAY);
    status.textContent = `done: ${session.responses.length} responses recorded`;
    downloadButton.hidden = false;
  }

  fileInput.addEventListener("change", async () => {
    const file = fileInput.files?.[0];
    if (!file) return;
    try {
      schedule = parseSchedule(await file.text());
    } catch (e) {
      status.textContent = (e as Error).message;
      return;
    }
    session = new Session(schedule);
    session.start();
    downloadButton.hidden = true;
    if (session.phase === "done") {
      finish();
    } else {
      showTrial();
    }
  });

  window.addEventListener("keydown", (event) => {
    if (!session) return;
    const side =
      event.key === "ArrowLeft" ? "left" :
      event.key === "ArrowRight" ? "right" : null;
    if (!side) return;
    if (!session.respond(side, Date.now())) return;
    event.preventDefault();
    if (session.phase === "done") {
      finish();
      return;
    }
    paintFixation(surface);
    status.textContent = "...";
    window.setTimeout(() => {
      if (!session) return;
      session.beginNextTrial();
      showTrial();
    }, INTER_TRIAL_MS);
  });

  downloadButton.addEventListener("click", () => {
    if (!session || !schedule) return;
    const text = exportJsonl(schedule, session.responses, {
      device_pixel_ratio: dpr,
      line_length_px: DEFAULT_LINE_LENGTH * dpr,
    });
    const blob = new Blob([text], { type: "application/jsonl" });
    const a = document.createElement("a");
    a.href = URL.createObjectURL(blob);
    a.download = `responses-seed${schedule.meta.seed}.jsonl`;
    a.click();
    URL.revokeObjectURL(a.href);
  });
}

setup();
