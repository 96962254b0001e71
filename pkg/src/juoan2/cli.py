"""Command-line front end: key management, encryption, and the attack bench.

Exit codes: 0 success, 1 operational failure (invalid ciphertext, attack
failure, bad input files), 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from random import Random

from .codec import decode_ciphertext, decode_key, encode_ciphertext, encode_key
from .decrypt import decrypt_block, decrypt_message
from .encrypt import BitBlock, Ciphertext, NoiseVector, encrypt_block, encrypt_message
from .errors import DecodeError, FramingError, InvalidCiphertextError, ParameterError
from .keygen import (
    ExtraSuperincreasingSeq,
    LeverPermutation,
    PrivateKey,
    PublicKey,
    derive_public,
    keygen,
)
from .cryptanalysis.density import assp_density_from_bits, ssp_density_from_bits
from .cryptanalysis.lattice import (
    block_from_kappa,
    expand_assp_to_ssp,
    kappa_from_assignment,
    lattice_attack,
)
from .cryptanalysis.oracles import brute_force_assp

# Worked reference vectors for `vectors appendix-a` (n_tilde = 8).
_REF_A = (2, 4, 11, 29, 76, 199, 523, 1368)
_REF_M = 3581
_REF_W = 863
_REF_DELTA = 1128
_REF_LEVER = (13, 2, 9, 7, 8, 3, 6, 11)
_REF_C = (2034, 3376, 134, 88, 2402, 746, 2833, 607)
_REF_BITS = (1, 0, 1, 0, 1, 0, 0, 1)
_REF_NOISE = (0, 0, 1, 0, 0, 1, 1, 1)
_REF_S = 3204
_REF_S0 = 1260
_REF_K = 115
_REF_INTERMEDIATE = 2283
_REF_BRANCHES = ("one", "noise", "noise", "one", "skip", "one", "skip", "one")


def _rng_from_seed(seed: str | None) -> Random:
    return Random(int(seed, 16)) if seed is not None else Random()


def _load_key(path: str, want_private: bool):
    key = decode_key(Path(path).read_text())
    if want_private and not isinstance(key, PrivateKey):
        raise DecodeError(f"{path}: not a private key")
    if not want_private and not isinstance(key, PublicKey):
        raise DecodeError(f"{path}: not a public key")
    return key


def _cmd_keygen(args: argparse.Namespace) -> int:
    pub, prv = keygen(args.n, _rng_from_seed(args.seed))
    Path(args.out + ".pub").write_text(encode_key(pub))
    Path(args.out + ".prv").write_text(encode_key(prv))
    print(f"wrote {args.out}.pub and {args.out}.prv (n={args.n}, "
          f"n_tilde={pub.n_tilde}, lgM={pub.M.bit_length()})")
    return 0


def _cmd_encrypt(args: argparse.Namespace) -> int:
    pub = _load_key(args.pub, want_private=False)
    message = Path(args.infile).read_bytes()
    blocks = encrypt_message(pub, message, _rng_from_seed(args.seed))
    Path(args.out).write_bytes(encode_ciphertext(blocks, pub.n_payload))
    print(f"encrypted {len(message)} bytes into {len(blocks)} blocks")
    return 0


def _cmd_decrypt(args: argparse.Namespace) -> int:
    prv = _load_key(args.prv, want_private=True)
    pub = _load_key(args.pub, want_private=False) if args.pub else None
    try:
        blocks, n_payload = decode_ciphertext(Path(args.infile).read_bytes())
    except (DecodeError, FramingError) as exc:
        raise InvalidCiphertextError(str(exc)) from exc
    if args.audit:
        for idx, ct in enumerate(blocks):
            block, trace = decrypt_block(prv, ct, pub)
            branches = ",".join(s.branch for s in trace.steps)
            print(f"block {idx}: k={trace.k} bits={''.join(map(str, block.bits))} "
                  f"branches={branches}", file=sys.stderr)
    message = decrypt_message(prv, blocks, pub, n_payload)
    Path(args.out).write_bytes(message)
    print(f"decrypted {len(blocks)} blocks into {len(message)} bytes")
    return 0


def _cmd_density(args: argparse.Namespace) -> int:
    if args.assp:
        report = assp_density_from_bits(args.n, args.lgM)
    else:
        report = ssp_density_from_bits(args.n, args.lgM)
    kind = "ASSP" if args.assp else "SSP"
    line = (f"{kind} n={report.n} lgM={report.lgM:.4f} "
            f"density={report.density:.4f} classification={report.classification}")
    if report.lower_bound is not None:
        line += f" lower_bound={report.lower_bound:.4f}"
    print(line)
    return 0


def _cmd_attack(args: argparse.Namespace) -> int:
    pub = _load_key(args.pub, want_private=False)
    blocks, _ = decode_ciphertext(Path(args.ct).read_bytes())
    weights, var_map = expand_assp_to_ssp(pub)
    any_hit = False
    for idx, ct in enumerate(blocks):
        x = lattice_attack(weights, ct.S, pub.M, assp_map=var_map, max_wraps=args.trials)
        if x is None:
            print(f"block {idx}: attack failed")
            continue
        block = block_from_kappa(kappa_from_assignment(x, var_map), pub.n_tilde)
        print(f"block {idx}: recovered bits {''.join(map(str, block))}")
        any_hit = True
    return 0 if any_hit else 1


def _cmd_oracle(args: argparse.Namespace) -> int:
    pub = _load_key(args.pub, want_private=False)
    if not 0 <= args.S < pub.M:
        raise ParameterError(f"S must lie in [0, {pub.M})")
    hits = brute_force_assp(pub, args.S)
    for bits, noise in hits:
        positions = ",".join(map(str, sorted(noise))) or "-"
        print(f"bits={''.join(map(str, bits))} noise_positions={positions}")
    print(f"{len(hits)} preimages")
    return 0


def _cmd_vectors(args: argparse.Namespace) -> int:
    if args.vector != "appendix-a":
        raise ParameterError(f"unknown vector set: {args.vector}")
    seq = ExtraSuperincreasingSeq(_REF_A)
    lever = LeverPermutation(_REF_LEVER)
    pub = derive_public(seq, _REF_W, _REF_DELTA, lever, _REF_M, n_payload=8)
    prv = PrivateKey(seq, _REF_M - _REF_W, pow(_REF_DELTA, -1, _REF_M), _REF_M, 8)
    checks = [("C", pub.C, _REF_C)]
    ct = encrypt_block(pub, BitBlock(_REF_BITS, 8), NoiseVector(_REF_NOISE))
    checks.append(("S", ct.S, _REF_S))
    checks.append(("S0", ct.S * prv.delta_inv % prv.M, _REF_S0))
    block, trace = decrypt_block(prv, ct, pub)
    checks.append(("k", trace.k, _REF_K))
    checks.append(
        ("intermediate", (_REF_S0 + trace.k * prv.neg_w) % prv.M, _REF_INTERMEDIATE)
    )
    checks.append(("branches", tuple(s.branch for s in trace.steps), _REF_BRANCHES))
    checks.append(("recovered", block.bits, _REF_BITS))
    ok = True
    for name, got, want in checks:
        match = got == want
        ok = ok and match
        shown = "".join(map(str, got)) if name == "recovered" else got
        print(f"{name}: {shown} [{'ok' if match else f'MISMATCH, expected {want}'}]")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="juoan2", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="generate a key pair")
    p.add_argument("-n", type=int, required=True, help="payload bits per block (even, >= 4)")
    p.add_argument("--seed", help="hex seed for deterministic generation")
    p.add_argument("-o", "--out", required=True, help="output base path (.pub/.prv)")
    p.set_defaults(func=_cmd_keygen)

    p = sub.add_parser("encrypt", help="encrypt a file")
    p.add_argument("--pub", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", help="hex seed for deterministic noise/padding")
    p.set_defaults(func=_cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a file")
    p.add_argument("--prv", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--pub", help="public key; enables re-encryption verification")
    p.add_argument("--audit", action="store_true", help="print per-block traces to stderr")
    p.set_defaults(func=_cmd_decrypt)

    p = sub.add_parser("density", help="print a density report")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--assp", action="store_true")
    group.add_argument("--ssp", action="store_true")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--lgM", type=float, required=True)
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("attack", help="run the lattice attack on a ciphertext")
    p.add_argument("--pub", required=True)
    p.add_argument("--ct", required=True)
    p.add_argument("--trials", type=int, help="cap on wraparound guesses")
    p.set_defaults(func=_cmd_attack)

    p = sub.add_parser("oracle", help="brute-force all preimages of a sum")
    p.add_argument("--pub", required=True)
    p.add_argument("--S", type=int, required=True)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("vectors", help="replay built-in reference vectors")
    p.add_argument("vector", choices=["appendix-a"])
    p.set_defaults(func=_cmd_vectors)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidCiphertextError as exc:
        print(f"invalid ciphertext: {exc}", file=sys.stderr)
        return 1
    except (DecodeError, FramingError, ParameterError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
