import { z } from "zod";

/** Wire schemas for the game server's JSON API.
 *
 * Every payload that crosses the HTTP boundary is validated here before the
 * rest of the client touches it, so a server drift shows up as one loud
 * "bad_payload" error instead of undefined creeping through the UI.
 */

export const PlayerSchema = z.enum(["alice", "bob"]);
export type Player = z.infer<typeof PlayerSchema>;

export const GameStateSchema = z.object({
  start: z.string(),
  token: z.string(),
  used: z.array(z.tuple([z.string(), z.string()])),
  mover: PlayerSchema,
  status: z.enum(["ongoing", "won"]),
  winner: PlayerSchema.optional(),
  reason: z.enum(["returned_to_start", "isolated_vertex"]).optional(),
});
export type GameState = z.infer<typeof GameStateSchema>;

export const GraphPayloadSchema = z.object({
  vertices: z.array(z.string()),
  edges: z.array(z.tuple([z.string(), z.string()])),
  layout: z.record(z.string(), z.tuple([z.number(), z.number()])).optional(),
});
export type GraphPayload = z.infer<typeof GraphPayloadSchema>;

export const MoveRecordSchema = z.object({
  by: PlayerSchema,
  to: z.string(),
});
export type MoveRecord = z.infer<typeof MoveRecordSchema>;

export const SessionSchema = z.object({
  id: z.string(),
  engine_side: PlayerSchema.nullable(),
  engine_optimal: z.boolean(),
  state: GameStateSchema,
  legal_moves: z.array(z.string()),
  moves: z.array(MoveRecordSchema),
  graph: GraphPayloadSchema,
  created: z.number(),
  updated: z.number(),
});
export type Session = z.infer<typeof SessionSchema>;

export const SolveResponseSchema = z.object({
  winner: PlayerSchema,
  witness: z.string().nullable(),
  stats: z.object({
    states_explored: z.number(),
    memo_entries: z.number(),
    elapsed: z.number(),
  }),
  start: z.string(),
});
export type SolveResponse = z.infer<typeof SolveResponseSchema>;

export const ErrorPayloadSchema = z.object({
  error: z.string(),
  kind: z.string(),
});
export type ErrorPayload = z.infer<typeof ErrorPayloadSchema>;

export interface NewGameRequest {
  family: string;
  n?: number;
  start: string;
  engine_side: Player | "none";
}

export interface SolveRequest {
  family: string;
  n?: number;
  p?: number;
  start?: string;
}
