// Device input -> outbound joystick frames at a fixed tick.
//
// A deflection source reports three physical channels: side-to-side,
// forward-back, and twist (rotation). Frames always carry the raw
// physical channels; the counterbalanced hand assignment (which
// channel drives which axis) is applied by the server, which learns
// the mode from the session's config frame.

import { ClientSession } from './client.js';

export interface DeflectionSource {
  sideToSide(): number;
  forwardBack(): number;
  twist(): number;
}

export class KeyboardSource implements DeflectionSource {
  private pressed = new Set<string>();

  attach(target: Pick<Window, 'addEventListener'>): void {
    target.addEventListener('keydown', (event) => this.pressed.add((event as KeyboardEvent).code));
    target.addEventListener('keyup', (event) => this.pressed.delete((event as KeyboardEvent).code));
  }

  private axis(negative: string, positive: string): number {
    return (this.pressed.has(positive) ? 1 : 0) - (this.pressed.has(negative) ? 1 : 0);
  }

  sideToSide(): number {
    return this.axis('ArrowLeft', 'ArrowRight');
  }

  forwardBack(): number {
    return this.axis('KeyS', 'KeyW');
  }

  twist(): number {
    // Q turns counter-clockwise (positive), E clockwise.
    return this.axis('KeyE', 'KeyQ');
  }
}

export class GamepadSource implements DeflectionSource {
  private readonly getGamepads: () => (Gamepad | null)[];
  private readonly deadZone: number;

  constructor(getGamepads: () => (Gamepad | null)[], deadZone = 0.08) {
    this.getGamepads = getGamepads;
    this.deadZone = deadZone;
  }

  private axis(index: number, invert = false): number {
    const pad = this.getGamepads().find((p) => p !== null);
    if (!pad || pad.axes.length <= index) return 0;
    const raw = pad.axes[index];
    if (Math.abs(raw) < this.deadZone) return 0;
    return invert ? -raw : raw;
  }

  sideToSide(): number {
    return this.axis(0);
  }

  forwardBack(): number {
    return this.axis(1, true); // stick forward is negative in the Gamepad API
  }

  twist(): number {
    return this.axis(2, true); // twisting left (counter-clockwise) is positive
  }
}

export function combineSources(...sources: DeflectionSource[]): DeflectionSource {
  const pick = (read: (s: DeflectionSource) => number) => {
    for (const source of sources) {
      const value = read(source);
      if (value !== 0) return value;
    }
    return 0;
  };
  return {
    sideToSide: () => pick((s) => s.sideToSide()),
    forwardBack: () => pick((s) => s.forwardBack()),
    twist: () => pick((s) => s.twist()),
  };
}

export class InputLoop {
  private readonly session: ClientSession;
  private readonly source: DeflectionSource;
  private lastTimestamp: number | null = null;

  constructor(session: ClientSession, source: DeflectionSource) {
    this.session = session;
    this.source = source;
  }

  /** One input tick; idle devices still emit a zero-deflection frame. */
  tick(dtSeconds: number): void {
    this.session.sendJoystick(
      this.source.sideToSide(),
      this.source.forwardBack(),
      this.source.twist(),
      dtSeconds,
    );
  }

  /** Frame-clock driver: dt comes from the time between animation frames. */
  onAnimationFrame(timestampMs: number): void {
    if (this.lastTimestamp !== null) {
      const dt = (timestampMs - this.lastTimestamp) / 1000;
      if (dt > 0) this.tick(dt);
    }
    this.lastTimestamp = timestampMs;
  }
}
