// Interactive front end for the xy-entropy wasm bindings.
// Build the wasm package first (see build.sh), then serve this directory.

import init, { entropy_curve, toeplitz_curve, point_report } from "./pkg/xy_entropy_wasm.js";

const H_MIN = 0;
const H_MAX = 3;
const POINTS = 700;
const LN2 = Math.log(2);

const canvas = document.getElementById("plot");
const ctx = canvas.getContext("2d");
const gammaSlider = document.getElementById("gamma");
const bandSlider = document.getElementById("band");
const overlaySelect = document.getElementById("overlay");
const gammaOut = document.getElementById("gammaOut");
const bandOut = document.getElementById("bandOut");
const reportBox = document.getElementById("report");

const margin = { left: 110, right: 30, top: 40, bottom: 90 };
const Y_MAX = 1.6;

function xPix(h) {
  const w = canvas.width - margin.left - margin.right;
  return margin.left + ((h - H_MIN) / (H_MAX - H_MIN)) * w;
}
function yPix(s) {
  const hgt = canvas.height - margin.top - margin.bottom;
  return margin.top + (1 - s / Y_MAX) * hgt;
}
function hFromPix(px) {
  const w = canvas.width - margin.left - margin.right;
  return H_MIN + ((px - margin.left) / w) * (H_MAX - H_MIN);
}

function drawAxes() {
  ctx.strokeStyle = "#8b93a5";
  ctx.fillStyle = "#454d5f";
  ctx.lineWidth = 2;
  ctx.font = "28px system-ui";
  ctx.beginPath();
  ctx.moveTo(margin.left, margin.top);
  ctx.lineTo(margin.left, canvas.height - margin.bottom);
  ctx.lineTo(canvas.width - margin.right, canvas.height - margin.bottom);
  ctx.stroke();
  ctx.textAlign = "center";
  for (let h = 0; h <= H_MAX + 1e-9; h += 0.5) {
    const x = xPix(h);
    ctx.beginPath();
    ctx.moveTo(x, canvas.height - margin.bottom);
    ctx.lineTo(x, canvas.height - margin.bottom + 10);
    ctx.stroke();
    ctx.fillText(h.toFixed(1), x, canvas.height - margin.bottom + 42);
  }
  ctx.fillText("magnetic field h", (margin.left + canvas.width - margin.right) / 2,
    canvas.height - 18);
  ctx.textAlign = "right";
  for (let s = 0; s <= Y_MAX + 1e-9; s += 0.4) {
    const y = yPix(s);
    ctx.beginPath();
    ctx.moveTo(margin.left - 10, y);
    ctx.lineTo(margin.left, y);
    ctx.stroke();
    ctx.fillText(s.toFixed(1), margin.left - 16, y + 9);
  }
  ctx.save();
  ctx.translate(30, (margin.top + canvas.height - margin.bottom) / 2);
  ctx.rotate(-Math.PI / 2);
  ctx.textAlign = "center";
  ctx.fillText("block entropy S (nats)", 0, 0);
  ctx.restore();
}

function drawCurve(data, color, width, dashed) {
  ctx.strokeStyle = color;
  ctx.lineWidth = width;
  ctx.setLineDash(dashed ? [10, 8] : []);
  ctx.beginPath();
  let pen = false;
  for (let i = 0; i < data.length; i += 2) {
    const h = data[i];
    const s = data[i + 1];
    if (!Number.isFinite(s) || s > Y_MAX) {
      pen = false;
      continue;
    }
    const x = xPix(h);
    const y = yPix(s);
    if (pen) ctx.lineTo(x, y);
    else ctx.moveTo(x, y);
    pen = true;
  }
  ctx.stroke();
  ctx.setLineDash([]);
}

function drawMarkers(gamma) {
  const hf = 2 * Math.sqrt(1 - gamma * gamma);
  // ln 2 reference
  ctx.strokeStyle = "#9aa4bb";
  ctx.setLineDash([3, 7]);
  ctx.lineWidth = 1.5;
  ctx.beginPath();
  ctx.moveTo(margin.left, yPix(LN2));
  ctx.lineTo(canvas.width - margin.right, yPix(LN2));
  ctx.stroke();
  ctx.fillStyle = "#6b7792";
  ctx.font = "26px system-ui";
  ctx.textAlign = "left";
  ctx.fillText("ln 2", canvas.width - margin.right - 64, yPix(LN2) - 8);
  // factorizing field
  if (hf > H_MIN && hf < H_MAX) {
    ctx.strokeStyle = "#7a8194";
    ctx.setLineDash([12, 8]);
    ctx.beginPath();
    ctx.moveTo(xPix(hf), margin.top);
    ctx.lineTo(xPix(hf), canvas.height - margin.bottom);
    ctx.stroke();
    ctx.fillStyle = "#6b7792";
    ctx.textAlign = "center";
    ctx.fillText("h = 2√(1−γ²)", xPix(hf), margin.top - 10);
  }
  // critical line
  ctx.strokeStyle = "#c65050";
  ctx.setLineDash([4, 6]);
  ctx.beginPath();
  ctx.moveTo(xPix(2), margin.top);
  ctx.lineTo(xPix(2), canvas.height - margin.bottom);
  ctx.stroke();
  ctx.fillStyle = "#b02a2a";
  ctx.textAlign = "center";
  ctx.fillText("h = 2 (critical)", xPix(2) + 80, margin.top + 36);
  ctx.setLineDash([]);
}

function redraw() {
  const gamma = parseFloat(gammaSlider.value);
  const band = parseFloat(bandSlider.value);
  gammaOut.value = gamma.toFixed(2);
  bandOut.value = band.toFixed(2);
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  drawAxes();
  drawMarkers(gamma);
  const limit = entropy_curve(gamma, H_MIN, H_MAX, POINTS, band);
  drawCurve(limit, "#1f3f8f", 4, false);
  const l = parseInt(overlaySelect.value, 10);
  if (l > 0) {
    const finite = toeplitz_curve(gamma, H_MIN, H_MAX, 260, l, band);
    drawCurve(finite, "#2e8b57", 3, true);
  }
}

const FIELDS = [
  ["case", (v) => v],
  ["sigma", (v) => v],
  ["k", fmt],
  ["kprime", fmt],
  ["tau0", fmt],
  ["S_series", fmt],
  ["series_terms", (v) => v],
  ["series_tail", (v) => (v === null ? "" : v.toExponential(2))],
  ["S_closed", fmt],
  ["S_asymptotic", fmt],
  ["factorizing_field", fmt],
];

function fmt(v) {
  return v === null || v === undefined ? "" : Number(v).toPrecision(10);
}

function renderReport(data) {
  if (data.error) {
    reportBox.innerHTML = `<h2>Point report</h2><span class="warn">${data.error}</span>`;
    return;
  }
  let rows = `<tr><td>γ, h</td><td>${fmt(data.gamma)}, ${fmt(data.h)}</td></tr>`;
  for (const [key, render] of FIELDS) {
    if (data[key] === undefined || data[key] === null) continue;
    rows += `<tr><td>${key}</td><td>${render(data[key])}</td></tr>`;
  }
  let note = "";
  if (data.divergent) {
    note = `<p class="warn">${data.note ?? "divergent point"}</p>`;
  }
  let spectrum = "";
  if (Array.isArray(data.lambda)) {
    const bars = data.lambda
      .map((l) => `<div title="${l.toPrecision(8)}" style="display:inline-block;width:22px;margin-right:4px;background:#1f3f8f;height:${Math.max(2, l * 70)}px;vertical-align:bottom"></div>`)
      .join("");
    spectrum = `<div id="spectrum"><span style="color:#5a6680">λ spectrum (m = 0…7): </span>${bars}</div>`;
  }
  reportBox.innerHTML = `<h2>Point report</h2><table>${rows}</table>${note}${spectrum}`;
}

canvas.addEventListener("click", (ev) => {
  const rect = canvas.getBoundingClientRect();
  const px = ((ev.clientX - rect.left) / rect.width) * canvas.width;
  const h = hFromPix(px);
  if (h < H_MIN || h > H_MAX) return;
  const gamma = parseFloat(gammaSlider.value);
  const band = parseFloat(bandSlider.value);
  renderReport(JSON.parse(point_report(gamma, h, band)));
});

for (const el of [gammaSlider, bandSlider, overlaySelect]) {
  el.addEventListener("input", redraw);
}

await init();
redraw();
