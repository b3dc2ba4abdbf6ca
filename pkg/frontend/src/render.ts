/** Canvas drawing of a scene. Pure geometry lives in scene.ts; this file
 * only pushes it onto a 2D context. */
import type { Scene } from "./scene.js";

export function drawScene(
  ctx: CanvasRenderingContext2D,
  scene: Scene,
  sizePx: number,
  selected: number | null,
): void {
  ctx.clearRect(0, 0, sizePx, sizePx);
  ctx.fillStyle = "#ffffff";
  ctx.fillRect(0, 0, sizePx, sizePx);

  ctx.strokeStyle = "#888888";
  ctx.lineWidth = 1.5;
  for (const e of scene.edges) {
    ctx.beginPath();
    ctx.moveTo(e.x1, e.y1);
    ctx.lineTo(e.x2, e.y2);
    ctx.stroke();
  }

  for (const d of scene.discs) {
    ctx.beginPath();
    ctx.arc(d.x, d.y, d.r, 0, 2 * Math.PI);
    ctx.fillStyle = d.color;
    ctx.fill();
    ctx.lineWidth = d.id === selected ? 2.5 : 0.75;
    ctx.strokeStyle = d.id === selected ? "#000000" : "#333333";
    ctx.stroke();
  }

  ctx.font = "12px sans-serif";
  ctx.textAlign = "center";
  ctx.textBaseline = "middle";
  ctx.fillStyle = "#111111";
  for (const d of scene.discs) {
    ctx.fillText(String(d.id), d.x, d.y);
  }
}
