// Wire protocol of the session service (JSON text frames over WebSocket).
//
// dx/dy are the physical stick channels (side-to-side, forward-back);
// the server's hand_map decides which Bloch axis each channel drives.

export type HandMap = 'normal' | 'swapped';
export type CollapseMode = 'born' | 'forced';

export interface JoystickFrame {
  type: 'joystick';
  dx: number;
  dy: number;
  rot: number;
  dt: number;
}

export interface ConfigFrame {
  type: 'config';
  hand_map?: HandMap;
  collapse_mode?: CollapseMode;
  seed?: number;
}

export interface FinishFrame {
  type: 'finish';
}

export type ClientFrame = JoystickFrame | ConfigFrame | FinishFrame;

export interface ReadoutPayload {
  reflection_depth: number;
  valence: number;
  processing_balance: number;
  relevance_affect: number;
  relevance_reflection: number;
}

export interface StateFrame {
  type: 'state';
  t: number;
  x: number;
  y: number;
  z: number;
  readout: ReadoutPayload;
}

export interface CollapseFrame {
  type: 'collapse';
  outcome: 0 | 1;
  t: number;
}

export interface ScoreFrame {
  type: 'score';
  mean_dev: number;
  max_dev: number;
}

export interface ErrorFrame {
  type: 'error';
  message: string;
}

export type ServerFrame = StateFrame | CollapseFrame | ScoreFrame | ErrorFrame;

export function clamp(value: number, lo = -1, hi = 1): number {
  if (Number.isNaN(value)) return 0;
  return Math.min(hi, Math.max(lo, value));
}

/** Build an outbound joystick frame; channels are clamped to [-1, 1]. */
export function makeJoystickFrame(dx: number, dy: number, rot: number, dt: number): JoystickFrame {
  if (!(dt > 0)) {
    throw new Error(`dt must be positive, got ${dt}`);
  }
  return { type: 'joystick', dx: clamp(dx), dy: clamp(dy), rot: clamp(rot), dt };
}

const SERVER_FRAME_TYPES = new Set(['state', 'collapse', 'score', 'error']);

export function parseServerFrame(data: string): ServerFrame {
  let parsed: unknown;
  try {
    parsed = JSON.parse(data);
  } catch {
    throw new Error(`server sent non-JSON frame: ${data.slice(0, 80)}`);
  }
  if (typeof parsed !== 'object' || parsed === null || Array.isArray(parsed)) {
    throw new Error('server frame must be a JSON object');
  }
  const frame = parsed as Record<string, unknown>;
  if (typeof frame.type !== 'string' || !SERVER_FRAME_TYPES.has(frame.type)) {
    throw new Error(`unknown server frame type: ${String(frame.type)}`);
  }
  return frame as unknown as ServerFrame;
}
