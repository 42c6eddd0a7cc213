// Canvas rendering of the labeled Bloch sphere: dashed axes whose dash
// intensity grows from the origin outward, the server-confirmed state
// marker, human and model trails, and collapse flashes.

import { ClientSession, Point3 } from './client.js';

export interface SceneConfig {
  axisLabels: { x: string; y: string; z: string };
  axisColors: { x: string; y: string; z: string };
  dashSegments: number;
  azimuth: number;
  elevation: number;
}

export const DEFAULT_SCENE: SceneConfig = {
  axisLabels: {
    x: 'deep – shallow thought',
    y: 'positive – negative feelings',
    z: 'I feel – I think',
  },
  axisColors: { x: '#e4572e', y: '#35a77c', z: '#3d7dd8' },
  dashSegments: 10,
  azimuth: Math.PI / 7,
  elevation: Math.PI / 9,
};

// Structural subset of CanvasRenderingContext2D, so tests can record calls.
export interface SceneContext {
  strokeStyle: string | CanvasGradient | CanvasPattern;
  fillStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  globalAlpha: number;
  font: string;
  textAlign: CanvasTextAlign;
  save(): void;
  restore(): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  stroke(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  fill(): void;
  fillRect(x: number, y: number, w: number, h: number): void;
  fillText(text: string, x: number, y: number): void;
  setLineDash(segments: number[]): void;
}

export interface SceneView {
  width: number;
  height: number;
  session: ClientSession;
  disconnected?: boolean;
}

/** Orthographic projection after azimuth (about z) and elevation (about x). */
export function project(point: Point3, config: SceneConfig): [number, number] {
  const [x, y, z] = point;
  const ca = Math.cos(config.azimuth);
  const sa = Math.sin(config.azimuth);
  const x1 = ca * x + sa * y;
  const y1 = -sa * x + ca * y;
  const ce = Math.cos(config.elevation);
  const se = Math.sin(config.elevation);
  const up = z * ce - y1 * se;
  return [x1, up];
}

function toScreen(point: Point3, config: SceneConfig, width: number, height: number): [number, number] {
  const scale = 0.38 * Math.min(width, height);
  const [u, v] = project(point, config);
  return [width / 2 + scale * u, height / 2 - scale * v];
}

function strokePolyline(ctx: SceneContext, points: [number, number][]): void {
  ctx.beginPath();
  points.forEach(([x, y], i) => (i === 0 ? ctx.moveTo(x, y) : ctx.lineTo(x, y)));
  ctx.stroke();
}

function drawWireframe(ctx: SceneContext, config: SceneConfig, width: number, height: number): void {
  ctx.strokeStyle = '#44506a';
  ctx.globalAlpha = 0.5;
  ctx.lineWidth = 1;
  ctx.setLineDash([]);
  const scale = 0.38 * Math.min(width, height);
  ctx.beginPath();
  ctx.arc(width / 2, height / 2, scale, 0, 2 * Math.PI);
  ctx.stroke();
  const circle = (pointAt: (angle: number) => Point3) => {
    const pts: [number, number][] = [];
    for (let i = 0; i <= 64; i += 1) {
      pts.push(toScreen(pointAt((2 * Math.PI * i) / 64), config, width, height));
    }
    strokePolyline(ctx, pts);
  };
  circle((a) => [Math.cos(a), Math.sin(a), 0]); // equator
  circle((a) => [Math.cos(a), 0, Math.sin(a)]);
  circle((a) => [0, Math.cos(a), Math.sin(a)]);
  ctx.globalAlpha = 1;
}

function drawDashedAxis(
  ctx: SceneContext,
  config: SceneConfig,
  width: number,
  height: number,
  direction: Point3,
  color: string,
  label: string,
): void {
  ctx.strokeStyle = color;
  ctx.setLineDash([]);
  const segments = config.dashSegments;
  for (const sign of [1, -1] as const) {
    for (let i = 0; i < segments; i += 1) {
      // Dashes thicken and lengthen away from the origin: weak at the
      // center, strong at the ends.
      const start = i / segments;
      const grow = (i + 1) / segments;
      const end = start + (0.25 + 0.55 * grow) / segments;
      const from = direction.map((c) => sign * c * start) as unknown as Point3;
      const to = direction.map((c) => sign * c * Math.min(end, 1)) as unknown as Point3;
      ctx.lineWidth = 0.6 + 1.8 * grow;
      ctx.globalAlpha = 0.35 + 0.65 * grow;
      strokePolyline(ctx, [
        toScreen(from, config, width, height),
        toScreen(to, config, width, height),
      ]);
    }
  }
  ctx.globalAlpha = 1;
  ctx.fillStyle = color;
  ctx.font = '13px system-ui, sans-serif';
  ctx.textAlign = 'center';
  const [lx, ly] = toScreen(direction.map((c) => 1.18 * c) as unknown as Point3, config, width, height);
  ctx.fillText(label, lx, ly);
}

function drawTrail(
  ctx: SceneContext,
  config: SceneConfig,
  width: number,
  height: number,
  path: Point3[],
  color: string,
  dashed: boolean,
): void {
  if (path.length < 2) return;
  ctx.strokeStyle = color;
  ctx.lineWidth = 1.5;
  ctx.globalAlpha = 0.85;
  ctx.setLineDash(dashed ? [6, 4] : []);
  strokePolyline(ctx, path.map((p) => toScreen(p, config, width, height)));
  ctx.setLineDash([]);
  ctx.globalAlpha = 1;
}

export function renderScene(ctx: SceneContext, view: SceneView, config: SceneConfig = DEFAULT_SCENE): void {
  const { width, height, session } = view;
  ctx.save();
  ctx.fillStyle = '#10141c';
  ctx.fillRect(0, 0, width, height);

  drawWireframe(ctx, config, width, height);
  drawDashedAxis(ctx, config, width, height, [1, 0, 0], config.axisColors.x, config.axisLabels.x);
  drawDashedAxis(ctx, config, width, height, [0, 1, 0], config.axisColors.y, config.axisLabels.y);
  drawDashedAxis(ctx, config, width, height, [0, 0, 1], config.axisColors.z, config.axisLabels.z);

  drawTrail(ctx, config, width, height, session.modelPath, '#8f7ae5', true);
  drawTrail(ctx, config, width, height, session.humanPath, '#f2b134', false);

  const position = session.position;
  if (position) {
    const [mx, my] = toScreen(position, config, width, height);
    ctx.fillStyle = '#f2b134';
    ctx.beginPath();
    ctx.arc(mx, my, 6, 0, 2 * Math.PI);
    ctx.fill();
  }

  if (session.collapseFlash) {
    const pole: Point3 = session.collapseFlash.outcome === 0 ? [0, 0, 1] : [0, 0, -1];
    const [fx, fy] = toScreen(pole, config, width, height);
    ctx.strokeStyle = '#ffffff';
    ctx.lineWidth = 2.5;
    ctx.beginPath();
    ctx.arc(fx, fy, 14, 0, 2 * Math.PI);
    ctx.stroke();
  }

  ctx.fillStyle = '#d7dff0';
  ctx.font = '12px system-ui, sans-serif';
  ctx.textAlign = 'left';
  ctx.fillText(`hands: ${session.handMap}`, 12, 18);
  if (session.score) {
    ctx.fillText(
      `mean deviation ${session.score.mean_dev.toFixed(3)} rad (max ${session.score.max_dev.toFixed(3)})`,
      12,
      36,
    );
  }

  if (view.disconnected) {
    ctx.globalAlpha = 0.75;
    ctx.fillStyle = '#10141c';
    ctx.fillRect(0, height / 2 - 22, width, 44);
    ctx.globalAlpha = 1;
    ctx.fillStyle = '#f2b134';
    ctx.textAlign = 'center';
    ctx.fillText('connection lost – last confirmed state frozen, reconnecting…', width / 2, height / 2 + 4);
  }
  ctx.restore();
}
