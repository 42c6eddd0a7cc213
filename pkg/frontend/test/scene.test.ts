import { describe, expect, it } from 'vitest';

import { ClientSession } from '../src/client.js';
import { DEFAULT_SCENE, SceneContext, project, renderScene } from '../src/scene.js';

class RecordingContext implements SceneContext {
  strokeStyle: string | CanvasGradient | CanvasPattern = '';
  fillStyle: string | CanvasGradient | CanvasPattern = '';
  lineWidth = 1;
  globalAlpha = 1;
  font = '';
  textAlign: CanvasTextAlign = 'left';
  texts: Array<{ text: string; x: number; y: number }> = [];
  arcs: Array<{ x: number; y: number; r: number }> = [];
  calls: string[] = [];

  save(): void {
    this.calls.push('save');
  }
  restore(): void {
    this.calls.push('restore');
  }
  beginPath(): void {
    this.calls.push('beginPath');
  }
  moveTo(): void {
    this.calls.push('moveTo');
  }
  lineTo(): void {
    this.calls.push('lineTo');
  }
  stroke(): void {
    this.calls.push('stroke');
  }
  arc(x: number, y: number, r: number): void {
    this.arcs.push({ x, y, r });
  }
  fill(): void {
    this.calls.push('fill');
  }
  fillRect(): void {
    this.calls.push('fillRect');
  }
  fillText(text: string, x: number, y: number): void {
    this.texts.push({ text, x, y });
  }
  setLineDash(): void {
    this.calls.push('setLineDash');
  }
}

const sink = { send: () => undefined };

describe('scene config', () => {
  it('carries the instrument labels verbatim', () => {
    expect(DEFAULT_SCENE.axisLabels.x).toBe('deep – shallow thought');
    expect(DEFAULT_SCENE.axisLabels.y).toBe('positive – negative feelings');
    expect(DEFAULT_SCENE.axisLabels.z).toBe('I feel – I think');
  });

  it('projects the poles above and below the center line', () => {
    const [, upTop] = project([0, 0, 1], DEFAULT_SCENE);
    const [, upBottom] = project([0, 0, -1], DEFAULT_SCENE);
    expect(upTop).toBeGreaterThan(0);
    expect(upBottom).toBeLessThan(0);
    expect(upTop).toBeCloseTo(-upBottom, 12);
  });
});

describe('renderScene', () => {
  it('draws the three axis labels and the server-confirmed marker', () => {
    const ctx = new RecordingContext();
    const session = new ClientSession(sink);
    session.handleServerMessage(
      JSON.stringify({
        type: 'state',
        t: 1,
        x: 0,
        y: 0,
        z: 1,
        readout: {
          reflection_depth: 0,
          valence: 0,
          processing_balance: 1,
          relevance_affect: 1,
          relevance_reflection: 0,
        },
      }),
    );
    renderScene(ctx, { width: 400, height: 400, session });
    const labels = ctx.texts.map((t) => t.text);
    expect(labels).toContain('deep – shallow thought');
    expect(labels).toContain('positive – negative feelings');
    expect(labels).toContain('I feel – I think');
    // Marker: a small filled arc at the projection of (0, 0, 1).
    const marker = ctx.arcs.find((a) => a.r === 6);
    expect(marker).toBeDefined();
    expect(marker!.y).toBeLessThan(200); // north pole renders above center
  });

  it('renders a frozen frame with a banner when disconnected', () => {
    const ctx = new RecordingContext();
    const session = new ClientSession(sink);
    renderScene(ctx, { width: 400, height: 400, session, disconnected: true });
    expect(ctx.texts.some((t) => t.text.includes('connection lost'))).toBe(true);
  });

  it('flashes the outcome pole on collapse', () => {
    const ctx = new RecordingContext();
    const session = new ClientSession(sink);
    session.handleServerMessage(JSON.stringify({ type: 'collapse', outcome: 1, t: 0.4 }));
    renderScene(ctx, { width: 400, height: 400, session });
    const flash = ctx.arcs.find((a) => a.r === 14);
    expect(flash).toBeDefined();
    expect(flash!.y).toBeGreaterThan(200); // |1> pole renders below center
  });
});
