/* tslint:disable */
/* eslint-disable */

export class DensityCurve {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly a: number;
    readonly b: number;
    /**
     * First moment of the density.
     */
    readonly e: number;
    readonly mu: Float64Array;
    readonly rho: Float64Array;
    /**
     * `one_saturated` or `two_saturated`.
     */
    readonly scenario: string;
}

export class ExactEfp {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly decimal: number;
    /**
     * `-log f / r^2`
     */
    readonly estimate: number;
    /**
     * `sigma(s/r)` for comparison; NaN at alpha = 0 or 1.
     */
    readonly sigma: number;
    /**
     * `f_{r,s}` as `p/q`.
     */
    readonly value: string;
}

export class SigmaCurve {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Jump of the third derivative at `v_c`.
     */
    readonly jump: number;
    readonly r_c: number;
    readonly sigma: Float64Array;
    readonly v_c: number;
    readonly v: Float64Array;
}

export function density_curve(alpha: number, wall: number, points: number): DensityCurve;

export function exact_efp(alpha: string, r: number, s: number): ExactEfp;

export function sigma_curve(alpha: number, points: number): SigmaCurve;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_densitycurve_free: (a: number, b: number) => void;
    readonly __wbg_exactefp_free: (a: number, b: number) => void;
    readonly __wbg_sigmacurve_free: (a: number, b: number) => void;
    readonly density_curve: (a: number, b: number, c: number) => [number, number, number];
    readonly densitycurve_a: (a: number) => number;
    readonly densitycurve_b: (a: number) => number;
    readonly densitycurve_e: (a: number) => number;
    readonly densitycurve_mu: (a: number) => [number, number];
    readonly densitycurve_rho: (a: number) => [number, number];
    readonly densitycurve_scenario: (a: number) => [number, number];
    readonly exact_efp: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly exactefp_decimal: (a: number) => number;
    readonly exactefp_estimate: (a: number) => number;
    readonly exactefp_sigma: (a: number) => number;
    readonly exactefp_value: (a: number) => [number, number];
    readonly sigma_curve: (a: number, b: number) => [number, number, number];
    readonly sigmacurve_jump: (a: number) => number;
    readonly sigmacurve_r_c: (a: number) => number;
    readonly sigmacurve_sigma: (a: number) => [number, number];
    readonly sigmacurve_v: (a: number) => [number, number];
    readonly sigmacurve_v_c: (a: number) => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
