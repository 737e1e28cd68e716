import type { HeatmapCollection, HeatmapFeature } from "./api";
import { rampColor } from "./ramp";

// Draws the aggregated risk grid as SVG polygons. Cells are shaded with
// the fixed ramp from ramp.ts, so relative darkness always reflects
// relative mean probability.

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 600;

function ring(feature: HeatmapFeature): number[][] {
  return feature.geometry.coordinates[0] ?? [];
}

export function renderHeatmap(container: HTMLElement, fc: HeatmapCollection): void {
  container.textContent = "";
  if (fc.features.length === 0) {
    const notice = document.createElement("div");
    notice.className = "notice";
    notice.textContent = "no reports in window";
    container.appendChild(notice);
    return;
  }

  let minLon = Infinity;
  let maxLon = -Infinity;
  let minLat = Infinity;
  let maxLat = -Infinity;
  for (const feature of fc.features) {
    for (const [lon, lat] of ring(feature) as [number, number][]) {
      minLon = Math.min(minLon, lon);
      maxLon = Math.max(maxLon, lon);
      minLat = Math.min(minLat, lat);
      maxLat = Math.max(maxLat, lat);
    }
  }
  const lonSpan = maxLon - minLon || 1;
  const latSpan = maxLat - minLat || 1;
  const height = (WIDTH * latSpan) / lonSpan;
  const toX = (lon: number) => ((lon - minLon) / lonSpan) * WIDTH;
  const toY = (lat: number) => ((maxLat - lat) / latSpan) * height;

  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("class", "heatmap");
  svg.setAttribute("viewBox", `0 0 ${WIDTH} ${height}`);

  for (const feature of fc.features) {
    const props = feature.properties;
    const poly = document.createElementNS(SVG_NS, "polygon");
    const points = ring(feature)
      .map(([lon, lat]) => `${toX(lon!)},${toY(lat!)}`)
      .join(" ");
    poly.setAttribute("points", points);
    poly.setAttribute("fill", rampColor(props.mean_p));
    poly.setAttribute("stroke", "#ffffff");
    poly.setAttribute("stroke-width", "0.5");
    poly.dataset.cell = JSON.stringify(props.cell);
    poly.dataset.meanP = String(props.mean_p);
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent =
      `cell [${props.cell[0]}, ${props.cell[1]}]: ${props.count} reports, ` +
      `mean p = ${props.mean_p.toFixed(2)}, ` +
      `high-risk share ${(props.high_risk_fraction * 100).toFixed(0)}%`;
    poly.appendChild(title);
    svg.appendChild(poly);
  }
  container.appendChild(svg);
}

export function renderHeatmapError(container: HTMLElement, message: string): void {
  container.textContent = "";
  const notice = document.createElement("div");
  notice.className = "notice";
  notice.textContent = message;
  container.appendChild(notice);
}
