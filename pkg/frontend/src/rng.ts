/** Seeded coin stream for auto rng mode.
 *
 * 32-bit mix with Math.imul keeps every draw bit-exact across platforms,
 * which is what makes a fixed-seed transcript reproducible.
 */

export type Coin = "heads" | "tails";

export interface CoinStream {
  readonly seed: number;
  /** Coin produced by draw number `index` (0-based).  Pure in (seed, index). */
  at(index: number): Coin;
}

function mix32(x: number): number {
  let z = x >>> 0;
  z ^= z >>> 16;
  z = Math.imul(z, 0x21f0aaad);
  z ^= z >>> 15;
  z = Math.imul(z, 0x735a2d97);
  z ^= z >>> 15;
  return z >>> 0;
}

export function coinStream(seed: number): CoinStream {
  const base = seed >>> 0;
  return {
    seed: base,
    at(index: number): Coin {
      const word = mix32((base + Math.imul(index + 1, 0x9e3779b9)) >>> 0);
      return word >>> 31 === 1 ? "heads" : "tails";
    },
  };
}
