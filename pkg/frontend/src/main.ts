// Browser entry point: connect to the session service, pump device
// input at the frame clock, and render every server-confirmed state.

import { ClientSession, Point3 } from './client.js';
import { InputLoop, KeyboardSource, GamepadSource, combineSources } from './input.js';
import { DEFAULT_SCENE, renderScene } from './scene.js';

function serverUrl(): string {
  const override = new URLSearchParams(window.location.search).get('server');
  if (override) return override;
  const scheme = window.location.protocol === 'https:' ? 'wss' : 'ws';
  return `${scheme}://${window.location.host}/ws`;
}

function modelUrl(): string {
  // The model overlay lives next to the websocket endpoint.
  return serverUrl().replace(/^ws/, 'http').replace(/\/ws$/, '/model');
}

async function loadModelPath(into: Point3[]): Promise<void> {
  try {
    const response = await fetch(modelUrl());
    if (!response.ok) return;
    const body = (await response.json()) as { samples?: Array<{ x: number; y: number; z: number }> };
    for (const sample of body.samples ?? []) {
      into.push([sample.x, sample.y, sample.z]);
    }
  } catch {
    // No overlay without a model; steering works regardless.
  }
}

function start(): void {
  const canvas = document.getElementById('sphere') as HTMLCanvasElement;
  const ctx = canvas.getContext('2d');
  if (!ctx) throw new Error('canvas 2d context unavailable');

  let socket = new WebSocket(serverUrl());
  let disconnected = false;
  const session = new ClientSession({ send: (data) => socket.send(data) });
  void loadModelPath(session.modelPath);

  const keyboard = new KeyboardSource();
  keyboard.attach(window);
  const source = combineSources(keyboard, new GamepadSource(() => navigator.getGamepads()));
  const loop = new InputLoop(session, source);

  let flashClearAt = 0;
  socket.onopen = () => {
    session.connected = true;
    disconnected = false;
  };
  socket.onmessage = (event) => {
    const frame = session.handleServerMessage(String(event.data));
    if (frame.type === 'collapse') flashClearAt = performance.now() + 600;
  };
  socket.onclose = () => {
    session.connected = false;
    disconnected = true;
    setTimeout(() => {
      socket = new WebSocket(serverUrl());
    }, 1500);
  };

  window.addEventListener('keydown', (event) => {
    if (event.code === 'KeyH') session.toggleHandMap();
    if (event.code === 'KeyF') session.finish();
  });

  const frame = (timestamp: number): void => {
    if (session.connected && socket.readyState === WebSocket.OPEN) {
      loop.onAnimationFrame(timestamp);
    }
    if (session.collapseFlash && performance.now() > flashClearAt) {
      session.collapseFlash = null;
    }
    renderScene(ctx, { width: canvas.width, height: canvas.height, session, disconnected }, DEFAULT_SCENE);
    window.requestAnimationFrame(frame);
  };
  window.requestAnimationFrame(frame);
}

window.addEventListener('DOMContentLoaded', start);

export type { Point3 };
