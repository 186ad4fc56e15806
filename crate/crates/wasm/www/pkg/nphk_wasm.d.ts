/* tslint:disable */
/* eslint-disable */

/**
 * Full analysis report as JSON.
 */
export function analyze(phi: string, p_list: string): string;

/**
 * `k_p` against `1/p` for a supported phase, with the two height bounds.
 */
export function exponent_profile_svg(phi: string): string;

/**
 * The Newton polygon of `phi` as an SVG document.
 */
export function newton_polygon_svg(phi: string): string;

/**
 * One value `I(λ, 0)` as JSON `{lambda, re, im, abs, err}`.
 */
export function oscillatory_value(phi: string, lambda: number, radius: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly analyze: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly exponent_profile_svg: (a: number, b: number) => [number, number, number, number];
    readonly newton_polygon_svg: (a: number, b: number) => [number, number, number, number];
    readonly oscillatory_value: (a: number, b: number, c: number, d: number) => [number, number, number, number];
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
