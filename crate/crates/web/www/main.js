import init, { specialize, heatmap, expand } from "./pkg/qmono_web.js";

const $ = (id) => document.getElementById(id);

function show(el, text, isError) {
  el.textContent = text;
  el.className = isError ? "error" : "";
}

function onSubmit(id, handler) {
  $(id).addEventListener("submit", (ev) => {
    ev.preventDefault();
    handler();
  });
}

function runSpecialize() {
  const r = JSON.parse(specialize($("spec-mu").value, $("spec-a").value, $("spec-b").value));
  if (r.error) return show($("spec-out"), r.error, true);
  show($("spec-out"), `m(${r.partition.join(",")}) = ${r.text}\n\nnumerator: ${r.record.numerator}`);
}

function drawGrid(grid) {
  const canvas = $("heat");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const rows = grid.length;
  const cols = grid[0].length;
  const pad = 28;
  const cell = Math.min((canvas.width - pad) / cols, (canvas.height - pad) / rows);
  const max = Math.max(...grid.flat());
  ctx.font = `${Math.max(9, Math.min(14, cell / 3))}px monospace`;
  ctx.textAlign = "center";
  ctx.textBaseline = "middle";
  for (let t = 0; t < rows; t++) {
    for (let q = 0; q < cols; q++) {
      const v = grid[t][q];
      const x = pad + q * cell;
      // t grows upward
      const y = (rows - 1 - t) * cell;
      const shade = v === 0 ? 255 : Math.round(230 - 190 * (v / max));
      ctx.fillStyle = v === 0 ? "#fff" : `rgb(${shade}, ${shade}, 255)`;
      ctx.fillRect(x, y, cell, cell);
      ctx.strokeStyle = "#ddd";
      ctx.strokeRect(x, y, cell, cell);
      if (v !== 0 && cell >= 14) {
        ctx.fillStyle = shade < 140 ? "#fff" : "#000";
        ctx.fillText(String(v), x + cell / 2, y + cell / 2);
      }
    }
  }
  ctx.fillStyle = "#555";
  ctx.fillText("q →", pad + (cols * cell) / 2, rows * cell + 14);
  ctx.save();
  ctx.translate(10, (rows * cell) / 2);
  ctx.rotate(-Math.PI / 2);
  ctx.fillText("t →", 0, 0);
  ctx.restore();
}

function runHeatmap() {
  const r = JSON.parse(heatmap($("heat-mu").value));
  if (r.error) return show($("heat-out"), r.error, true);
  drawGrid(r.grid);
  const status = r.checksPass ? "all checks hold" : "a check FAILED";
  show($("heat-out"), `H = ${r.H}\nHbar = ${r.Hbar}\n${status}`);
}

function runExpand() {
  const r = JSON.parse(expand(Number($("expand-n").value), $("expand-basis").value));
  const table = $("expand-out");
  table.replaceChildren();
  if (r.error) {
    const row = table.insertRow();
    row.insertCell().textContent = r.error;
    row.className = "error";
    return;
  }
  const head = table.createTHead().insertRow();
  for (const h of ["μ", "coefficient"]) {
    const th = document.createElement("th");
    th.textContent = h;
    head.appendChild(th);
  }
  const body = table.createTBody();
  for (const e of r.entries) {
    const row = body.insertRow();
    row.insertCell().textContent = `(${e.mu.join(",")})`;
    row.insertCell().textContent = e.coefficient;
  }
}

await init();
onSubmit("spec-form", runSpecialize);
onSubmit("heat-form", runHeatmap);
onSubmit("expand-form", runExpand);
runSpecialize();
runHeatmap();
runExpand();
