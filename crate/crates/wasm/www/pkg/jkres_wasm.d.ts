/* tslint:disable */
/* eslint-disable */

export function inverse_laplace_pieces(vectors: string, expression: string, delta_witness: string): string;

export function inverse_laplace_svg(vectors: string, expression: string, delta_witness: string): string;

export function jk_residue(vectors: string, expression: string, exp_sign: number): string;

export function normalize(vectors: string, expression: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly inverse_laplace_pieces: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly inverse_laplace_svg: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly jk_residue: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly normalize: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
