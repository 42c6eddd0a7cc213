// Client-side session mirror. The server is authoritative: the marker
// position, trails, and collapse flashes come only from server frames;
// local input never moves anything directly.

import {
  CollapseFrame,
  ConfigFrame,
  HandMap,
  ScoreFrame,
  ServerFrame,
  StateFrame,
  makeJoystickFrame,
  parseServerFrame,
} from './protocol.js';

export interface FrameSink {
  send(data: string): void;
}

export type Point3 = [number, number, number];

export class ClientSession {
  handMap: HandMap = 'normal';
  connected = false;
  lastState: StateFrame | null = null;
  humanPath: Point3[] = [];
  readonly modelPath: Point3[];
  collapseFlash: CollapseFrame | null = null;
  score: ScoreFrame | null = null;
  lastError: string | null = null;
  configFramesSent = 0;

  private readonly sink: FrameSink;

  constructor(sink: FrameSink, modelPath: Point3[] = []) {
    this.sink = sink;
    this.modelPath = modelPath;
  }

  /** Marker position; equals the last server-confirmed state or null. */
  get position(): Point3 | null {
    return this.lastState ? [this.lastState.x, this.lastState.y, this.lastState.z] : null;
  }

  handleServerMessage(data: string): ServerFrame {
    const frame = parseServerFrame(data);
    switch (frame.type) {
      case 'state':
        this.lastState = frame;
        this.humanPath.push([frame.x, frame.y, frame.z]);
        break;
      case 'collapse':
        this.collapseFlash = frame;
        break;
      case 'score':
        this.score = frame;
        break;
      case 'error':
        this.lastError = frame.message;
        break;
    }
    return frame;
  }

  /** Send one tick of deflection; channels are clamped, dt must be > 0. */
  sendJoystick(dx: number, dy: number, rot: number, dt: number): void {
    this.sink.send(JSON.stringify(makeJoystickFrame(dx, dy, rot, dt)));
  }

  sendConfig(config: Omit<ConfigFrame, 'type'>): void {
    const frame: ConfigFrame = { type: 'config', ...config };
    this.sink.send(JSON.stringify(frame));
    this.configFramesSent += 1;
  }

  /** Flip the hand assignment; emits exactly one config frame. */
  toggleHandMap(): HandMap {
    this.handMap = this.handMap === 'normal' ? 'swapped' : 'normal';
    this.sendConfig({ hand_map: this.handMap });
    return this.handMap;
  }

  finish(): void {
    this.sink.send(JSON.stringify({ type: 'finish' }));
  }
}
