// Typed client for the telemetry service. The dashboard never computes
// model values itself; it renders exactly what these payloads carry.

export interface MapSummary {
  width: number;
  height: number;
  palette_version: number;
  rows: number[][];
}

export interface TownComposition {
  houses: number;
  corn_fields: number;
  dairy_farms: number;
}

export interface ModelSnapshot {
  tutorials_completed: number;
  rank_tutorial: number;
  rank_money: number;
  rank_bloom: number;
  rank_farm: number;
  rank_population: number;
  playing_time: string;
  population: number;
  map_summary: MapSummary;
  town_composition: TownComposition;
  diagonal_strategy: boolean;
  idle_active: boolean;
  idle_building: boolean;
  idle_sale: boolean;
  idle_explore: boolean;
  farmer_deaths: number;
}

export interface PlayerPanel {
  display_name: string;
  session_id: string;
  snapshot: ModelSnapshot;
}

export interface ClassDashboard {
  code: string;
  generated_at: number;
  players: PlayerPanel[];
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    detail: string,
  ) {
    super(detail || code);
  }
}

async function parseError(resp: Response): Promise<ApiError> {
  let code = `HTTP_${resp.status}`;
  let detail = resp.statusText;
  try {
    const body = await resp.json();
    if (body && typeof body.error === "string") code = body.error;
    if (body && typeof body.detail === "string") detail = body.detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(resp.status, code, detail);
}

export async function fetchDashboard(code: string, baseUrl = ""): Promise<ClassDashboard> {
  const resp = await fetch(`${baseUrl}/api/classes/${encodeURIComponent(code)}/dashboard`);
  if (!resp.ok) throw await parseError(resp);
  return (await resp.json()) as ClassDashboard;
}

export async function createClass(baseUrl = ""): Promise<string> {
  const resp = await fetch(`${baseUrl}/api/classes`, { method: "POST" });
  if (!resp.ok) throw await parseError(resp);
  const body = await resp.json();
  return body.code as string;
}

export async function registerPlayer(
  code: string,
  name: string,
  baseUrl = "",
): Promise<{ session_id: string; play_url: string }> {
  const resp = await fetch(`${baseUrl}/api/classes/${encodeURIComponent(code)}/players`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ name }),
  });
  if (!resp.ok) throw await parseError(resp);
  return (await resp.json()) as { session_id: string; play_url: string };
}
