// Documents pushed by the gateway (mirrors its /api/wall schema).

export interface WallInfo {
  rows: number;
  cols: number;
  screenWidth: number;
  screenHeight: number;
  background: string;
}

export interface SlideInfo {
  layout: number;
  title: string;
  body: string;
  background: string;
}

export interface WindowContent {
  kind: string;
  deckTitle?: string;
  slideCount?: number;
  slideIndex?: number;
  slideshow?: boolean;
  slide?: SlideInfo;
  label?: string;
}

export interface WindowDoc {
  id: number;
  x: number;
  y: number;
  w: number;
  h: number;
  z: number;
  visible: boolean;
  content: WindowContent;
}

export interface WallStateDoc {
  revision: number;
  wall: WallInfo;
  windows: WindowDoc[];
}

export interface Rect {
  x: number;
  y: number;
  w: number;
  h: number;
}

export interface GatewayConfig {
  authRequired: boolean;
  server: string;
}
