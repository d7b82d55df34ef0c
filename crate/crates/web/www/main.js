import init, { regionCodes, sugenoGrid, costText } from "./pkg/lattice_sugeno_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

const REGION_COLORS = {
  0: "#fff",
  5: "#8ecae6",
  6: "#ffb703",
  7: "#90be6d",
  4: "#e63946",
};

function fail(target, err) {
  target.innerHTML = `<span class="error">${err.message ?? err}</span>`;
  target.style.gridTemplateColumns = "";
}

function drawGrid(target, k, cells) {
  target.innerHTML = "";
  target.style.gridTemplateColumns = `repeat(${k}, 22px)`;
  for (const cell of cells) target.appendChild(cell);
}

function renderRegion() {
  const k = num("rk"), x1 = num("rx1"), x2 = num("rx2");
  try {
    const codes = regionCodes(k, x1, x2);
    const counts = [0, 0, 0];
    const cells = Array.from(codes, (code, i) => {
      const div = document.createElement("div");
      div.style.background = REGION_COLORS[code] ?? "#999";
      if (Math.floor(i / k) === x1 && i % k === x2) div.textContent = "x";
      [1, 2, 4].forEach((bit, j) => { if (code & bit) counts[j] += 1; });
      return div;
    });
    drawGrid($("region"), k, cells);
    $("region-counts").textContent =
      `|A(x)| = ${counts[0]}, |B(x)| = ${counts[1]}, |C(x)| = ${counts[2]}`;
  } catch (err) {
    fail($("region"), err);
    $("region-counts").textContent = "";
  }
}

function renderSurface() {
  const k = num("sk");
  try {
    const values = sugenoGrid(k, num("sm1"), num("sm2"), $("sinf").checked);
    const cells = Array.from(values, (v) => {
      const div = document.createElement("div");
      const shade = Math.round(255 - (200 * v) / (k - 1));
      div.style.background = `rgb(${shade}, ${shade}, 255)`;
      div.textContent = v;
      return div;
    });
    drawGrid($("surface"), k, cells);
  } catch (err) {
    fail($("surface"), err);
  }
}

function renderCost() {
  try {
    $("cost").textContent = costText(num("ck"), num("cn"));
  } catch (err) {
    $("cost").textContent = err.message ?? String(err);
  }
}

await init();
for (const id of ["rk", "rx1", "rx2"]) $(id).addEventListener("input", renderRegion);
for (const id of ["sk", "sm1", "sm2", "sinf"]) $(id).addEventListener("input", renderSurface);
for (const id of ["ck", "cn"]) $(id).addEventListener("input", renderCost);
renderRegion();
renderSurface();
renderCost();
