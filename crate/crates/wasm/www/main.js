// Static driver for the demo page. Expects the wasm-bindgen output of the
// lhkit-wasm crate in ./pkg (see the repository README for the build line).

import init, { mp_trajectory, pdm_curves, sisf_run } from "./pkg/lhkit_wasm.js";

function clearCanvas(ctx) {
  ctx.clearRect(0, 0, ctx.canvas.width, ctx.canvas.height);
}

function drawPolyline(ctx, pts, box, style, dash = []) {
  if (pts.length < 2) return;
  const [x0, x1, y0, y1] = box;
  const w = ctx.canvas.width, h = ctx.canvas.height;
  ctx.save();
  ctx.strokeStyle = style;
  ctx.setLineDash(dash);
  ctx.lineWidth = 1.4;
  ctx.beginPath();
  pts.forEach(([x, y], i) => {
    const px = ((x - x0) / (x1 - x0)) * (w - 20) + 10;
    const py = h - (((y - y0) / (y1 - y0)) * (h - 20) + 10);
    if (i === 0) ctx.moveTo(px, py); else ctx.lineTo(px, py);
  });
  ctx.stroke();
  ctx.restore();
}

function bounds(ptsList) {
  let x0 = Infinity, x1 = -Infinity, y0 = Infinity, y1 = -Infinity;
  for (const pts of ptsList) for (const [x, y] of pts) {
    if (!isFinite(x) || !isFinite(y)) continue;
    x0 = Math.min(x0, x); x1 = Math.max(x1, x);
    y0 = Math.min(y0, y); y1 = Math.max(y1, y);
  }
  const padX = 0.05 * (x1 - x0 || 1), padY = 0.05 * (y1 - y0 || 1);
  return [x0 - padX, x1 + padX, y0 - padY, y1 + padY];
}

function hookup(ids, render) {
  for (const id of ids) {
    const el = document.getElementById(id);
    el.addEventListener("input", render);
  }
  render();
}

function val(id, outId) {
  const v = parseFloat(document.getElementById(id).value);
  document.getElementById(outId).textContent = v.toFixed(2);
  return v;
}

function renderMp() {
  const z = val("mp-z", "mp-z-out");
  const c = val("mp-c", "mp-c-out");
  const amp = val("mp-amp", "mp-amp-out");
  const data = mp_trajectory(z, c, 1.0, amp, 1.0, 0.0, 1.3, 0.4, 10.0);
  const ctx = document.getElementById("mp-canvas").getContext("2d");
  clearCanvas(ctx);
  const orbit1 = [], orbit2 = [], inv = [];
  for (let i = 0; i < data.length; i += 6) {
    orbit1.push([data[i + 1], data[i + 2]]);
    orbit2.push([data[i + 3], data[i + 4]]);
    inv.push([data[i], data[i + 5]]);
  }
  // split canvas: orbits on the left half, invariant trace on the right
  const boxOrbit = bounds([orbit1, orbit2]);
  const scale = (pts, box, rect) => pts.map(([x, y]) => [
    rect.x + ((x - box[0]) / (box[1] - box[0])) * rect.w,
    rect.y + rect.h - ((y - box[2]) / (box[3] - box[2])) * rect.h,
  ]);
  const draw = (pts, style, dash = []) => {
    if (pts.length < 2) return;
    ctx.save(); ctx.strokeStyle = style; ctx.setLineDash(dash); ctx.lineWidth = 1.4;
    ctx.beginPath();
    pts.forEach(([x, y], i) => { if (i === 0) ctx.moveTo(x, y); else ctx.lineTo(x, y); });
    ctx.stroke(); ctx.restore();
  };
  draw(scale(orbit1, boxOrbit, { x: 10, y: 10, w: 440, h: 360 }), "#8251c2");
  draw(scale(orbit2, boxOrbit, { x: 10, y: 10, w: 440, h: 360 }), "#2e7d32");
  if (inv.length) {
    const f0 = inv[0][1];
    const boxInv = bounds([inv.map(([t, f]) => [t, f])]);
    const pad = Math.max(1e-9, 0.02 * Math.abs(f0));
    const b = [boxInv[0], boxInv[1], f0 - pad, f0 + pad];
    draw(scale(inv, b, { x: 500, y: 10, w: 430, h: 360 }), "#c62828");
  }
}

function renderPdm() {
  const z = val("pdm-z", "pdm-z-out");
  const data = pdm_curves(Math.max(z, 1e-6), 0.05, 3.0, 160);
  const ctx = document.getElementById("pdm-canvas").getContext("2d");
  clearCanvas(ctx);
  const mass = [], uosc = [], urw = [];
  for (let i = 0; i < data.length; i += 4) {
    mass.push([data[i], data[i + 1]]);
    uosc.push([data[i], Math.min(data[i + 2], 12)]);
    urw.push([data[i], Math.min(data[i + 3], 12)]);
  }
  const box = [0, 3, 0, 12];
  drawPolyline(ctx, mass.map(([x, y]) => [x, y * 10]), box, "#8251c2");
  drawPolyline(ctx, uosc, box, "#2e7d32", [6, 4]);
  drawPolyline(ctx, urw, box, "#c62828", [2, 3]);
}

function renderSisf() {
  const z = val("sisf-z", "sisf-z-out");
  const rho = val("sisf-rho", "sisf-rho-out");
  const q0 = val("sisf-q", "sisf-q-out");
  const data = sisf_run(z, 1.0, rho, q0, 4.0, 12.0);
  const ctx = document.getElementById("sisf-canvas").getContext("2d");
  clearCanvas(ctx);
  const q = [], p = [];
  for (let i = 0; i < data.length; i += 3) {
    q.push([data[i], data[i + 1]]);
    p.push([data[i], Math.min(data[i + 2], 30)]);
  }
  const box = bounds([q, p]);
  drawPolyline(ctx, q, box, "#8251c2");
  drawPolyline(ctx, p, box, "#2e7d32", [6, 4]);
}

await init();
hookup(["mp-z", "mp-c", "mp-amp"], renderMp);
hookup(["pdm-z"], renderPdm);
hookup(["sisf-z", "sisf-rho", "sisf-q"], renderSisf);
