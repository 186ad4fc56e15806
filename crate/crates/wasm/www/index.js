import init, { analyze, newton_polygon_svg, exponent_profile_svg, oscillatory_value } from "./pkg/nphk_wasm.js";

const EXAMPLES = [
  "x^2*y + y^3",
  "x*(y - x^2)^2 + x^5",
  "x*(y - x^2)^2 + x^7",
  "x*(y - x^3)^2 + x^9",
  "x*(y - x^2)^2",
  "y^3 + x^4",
  "y^3 + y*x^3",
  "y^3 + x^5",
  "y^3 + x^6",
  "x^4 + y^4",
];

const $ = (id) => document.getElementById(id);

function message(e) {
  return e instanceof Error ? e.message : String(e);
}

function summarize(r) {
  const lines = [
    `phase          ${r.phase}`,
    `kind           ${r.kind}   (rank ${r.rank})`,
    `distance d     ${r.polygon.d}`,
  ];
  if (r.m !== null && r.m !== undefined) lines.push(`m, n           ${r.m}, ${r.n}`);
  if (r.h !== null && r.h !== undefined) {
    lines.push(`height h       ${r.h}`);
    lines.push(`linear h_lin   ${r.h_lin}   ${r.linearly_adapted ? "(linearly adapted)" : "(not linearly adapted)"}`);
  }
  if (r.adapted_phase) lines.push(`adapted        ${r.adapted_phase}`);
  if (r.kp_table && r.kp_table.length) {
    lines.push("", "p        k_p");
    for (const row of r.kp_table) lines.push(`${row.p.padEnd(8)} ${row.k_p}`);
  }
  for (const w of r.warnings || []) lines.push("", `warning: ${w}`);
  return lines.join("\n");
}

function runAnalyze() {
  const phi = $("phi").value;
  $("analyze-error").textContent = "";
  for (const id of ["polygon", "profile", "summary", "report"]) $(id).textContent = "";
  try {
    $("polygon").innerHTML = newton_polygon_svg(phi);
  } catch (e) {
    $("analyze-error").textContent = message(e);
    return;
  }
  try {
    const json = analyze(phi, $("plist").value);
    $("report").textContent = json;
    $("summary").textContent = summarize(JSON.parse(json));
  } catch (e) {
    $("analyze-error").textContent = message(e);
    return;
  }
  try {
    $("profile").innerHTML = exponent_profile_svg(phi);
  } catch (e) {
    $("profile").textContent = `no k_p profile: ${message(e)}`;
  }
}

let previous = null;

function addValue(lambda) {
  const v = JSON.parse(oscillatory_value($("phi").value, lambda, Number($("radius").value)));
  let slope = "";
  if (previous && previous.lambda !== v.lambda && previous.abs > 0 && v.abs > 0) {
    slope = (Math.log(v.abs / previous.abs) / Math.log(v.lambda / previous.lambda)).toFixed(4);
  }
  previous = v;
  const row = document.createElement("tr");
  for (const cell of [v.lambda, v.re.toExponential(5), v.im.toExponential(5), v.abs.toExponential(5), v.err.toExponential(2), slope]) {
    const td = document.createElement("td");
    td.textContent = cell;
    row.appendChild(td);
  }
  document.querySelector("#values tbody").appendChild(row);
}

function clearValues() {
  previous = null;
  document.querySelector("#values tbody").textContent = "";
  $("osc-error").textContent = "";
}

function runIntegrate() {
  $("osc-error").textContent = "";
  try {
    addValue(Number($("lambda").value));
  } catch (e) {
    $("osc-error").textContent = message(e);
  }
}

async function runSweep() {
  clearValues();
  for (let lambda = 16; lambda <= 4096; lambda *= 2) {
    try {
      addValue(lambda);
    } catch (e) {
      $("osc-error").textContent = message(e);
      return;
    }
    // let the table repaint between points
    await new Promise((r) => setTimeout(r, 0));
  }
}

await init();

for (const phi of EXAMPLES) {
  const b = document.createElement("button");
  b.textContent = phi;
  b.addEventListener("click", () => {
    $("phi").value = phi;
    clearValues();
    runAnalyze();
  });
  $("examples").appendChild(b);
}
$("analyze").addEventListener("click", runAnalyze);
$("phi").addEventListener("keydown", (e) => {
  if (e.key === "Enter") runAnalyze();
});
$("integrate").addEventListener("click", runIntegrate);
$("sweep").addEventListener("click", runSweep);
runAnalyze();
