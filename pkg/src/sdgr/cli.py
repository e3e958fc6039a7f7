"""Command-line front end.

Commands: params, keygen, encaps, decaps, kexdemo, solve-sdpd, bench.
Every command is deterministic under --seed; without one, system entropy is
used.  Exit codes: 0 success, 2 checksum failure, 3 parameter mismatch,
4 solver guard violation.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from typing import List, Optional

from . import costmodel, fileio, games, kem
from .kex import KexSession, SecretPair
from .params import PARAM_SETS, VALID_L1, Params, make_params, make_ring, params_from_values
from .skewring import RingElement, SkewRing

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CHECKSUM = 2
EXIT_PARAM_MISMATCH = 3
EXIT_GUARD = 4


def _rng(seed: Optional[int]) -> random.Random:
    return random.Random(seed) if seed is not None else random.SystemRandom()


def _hex(data: bytes) -> str:
    return data.hex()


# -- non-normative byte-message codec -----------------------------------------
# The schemes' message space is the ring itself; this codec only exists so
# demos can move byte strings through the PKE.  It packs floor(log2 p) bits
# per F_p coefficient (one fewer than the wire width, so every chunk is < p)
# and prepends a 4-byte length.


def encode_message_bytes(ring: SkewRing, data: bytes) -> List[RingElement]:
    width = ring.field.coeff_bits - 1
    if width < 1:
        raise ValueError("p too small for the byte codec")
    framed = len(data).to_bytes(4, "big") + data
    nvalues = (len(framed) * 8 + width - 1) // width
    per_elem = 2 * ring.size
    nvalues = ((nvalues + per_elem - 1) // per_elem) * per_elem
    padded = framed + b"\x00" * ((nvalues * width + 7) // 8 - len(framed))
    values = kem.unpack_bits(padded, width, nvalues)
    elems = []
    for off in range(0, nvalues, per_elem):
        chunk = values[off : off + per_elem]
        coeffs = [(chunk[2 * i], chunk[2 * i + 1]) for i in range(ring.size)]
        elems.append(ring.element(coeffs))
    return elems


def decode_message_bytes(ring: SkewRing, elems: List[RingElement]) -> bytes:
    width = ring.field.coeff_bits - 1
    values: List[int] = []
    for e in elems:
        values.extend(int(v) for v in e.coeffs.ravel())
    stream = kem.pack_bits(values, width)
    ln = int.from_bytes(stream[:4], "big")
    return stream[4 : 4 + ln]


# -- file helpers --------------------------------------------------------------


def _params_header(params: Params, l1: int = 0) -> fileio.Header:
    return fileio.Header(p=params.p, m=params.m, n=params.n, lam=params.lam, l1=l1)


def _load_params_file(path: str) -> Params:
    header, payload = fileio.read_file(path)
    ring = make_ring(header.p, header.n, m=header.m, lam=header.lam)
    h = kem.decode_ring(ring, payload)
    return params_from_values(header.p, header.m, header.n, header.lam, h)


def _headers_match(header: fileio.Header, params: Params) -> bool:
    return (header.p, header.m, header.n, header.lam) == (
        params.p,
        params.m,
        params.n,
        params.lam,
    )


# -- commands ------------------------------------------------------------------


def cmd_params(args) -> int:
    if args.set == "toy":
        print("warning: toy parameters are desk-scale only", file=sys.stderr)
    params = make_params(args.set, seed=args.seed)
    fileio.write_file(args.out, _params_header(params), kem.rep_ring(params.h))
    print(f"wrote {args.out} (p={params.p}, m={params.m}, n={params.n}, lambda={params.lam})")
    return EXIT_OK


def cmd_keygen(args) -> int:
    params = _load_params_file(args.params)
    priv, pk_bytes = kem.kem_keygen(params, _rng(args.seed))
    payload = (
        kem.rep_ring(priv.s)
        + kem.rep_ring(priv.sk.a)
        + kem.rep_ring(priv.sk.gamma)
        + pk_bytes
    )
    fileio.write_file(args.out, _params_header(params, args.l1), payload)
    fileio.write_file(args.pub, _params_header(params, args.l1), pk_bytes)
    print(f"wrote {args.out} and {args.pub}")
    return EXIT_OK


def cmd_encaps(args) -> int:
    params = _load_params_file(args.params)
    header, pk_bytes = fileio.read_file(args.pub)
    if not _headers_match(header, params):
        print("error: public key parameters do not match", file=sys.stderr)
        return EXIT_PARAM_MISMATCH
    ct, key = kem.kem_encaps(pk_bytes, params, _rng(args.seed), l1=args.l1)
    fileio.write_file(args.out, _params_header(params, args.l1), ct)
    print(_hex(key))
    return EXIT_OK


def cmd_decaps(args) -> int:
    params = _load_params_file(args.params)
    header, payload = fileio.read_file(args.priv)
    if not _headers_match(header, params):
        print("error: private key parameters do not match", file=sys.stderr)
        return EXIT_PARAM_MISMATCH
    half = kem.rep_len(params.ring)
    if len(payload) != 4 * half:
        print("error: malformed private key file", file=sys.stderr)
        return EXIT_PARAM_MISMATCH
    s = kem.decode_ring(params.ring, payload[:half])
    a = kem.decode_ring(params.ring, payload[half : 2 * half])
    gamma = kem.decode_ring(params.ring, payload[2 * half : 3 * half])
    pk = kem.decode_ring(params.ring, payload[3 * half :])
    priv = kem.KemPrivate(s=s, sk=SecretPair(a=a, gamma=gamma), pk=pk)
    ct_header, ct = fileio.read_file(args.infile)
    if not _headers_match(ct_header, params):
        print("error: ciphertext parameters do not match", file=sys.stderr)
        return EXIT_PARAM_MISMATCH
    l1 = args.l1 if args.l1 else (ct_header.l1 or header.l1 or 128)
    key = kem.kem_decaps(priv, ct, params, l1=l1)
    print(_hex(key))
    return EXIT_OK


def cmd_kexdemo(args) -> int:
    params = make_params(args.set, seed=args.seed)
    rng = _rng(args.seed)
    alice = KexSession(params, b"P_i", b"session-0", rng)
    bob = KexSession(params, b"P_j", b"session-0", rng)
    print(f"pk_i={_hex(kem.rep_ring(alice.message.pk))}")
    print(f"pk_j={_hex(kem.rep_ring(bob.message.pk))}")
    k_i = alice.derive(bob.message)
    k_j = bob.derive(alice.message)
    print(f"k_i={_hex(kem.rep_ring(k_i))}")
    print(f"k_j={_hex(kem.rep_ring(k_j))}")
    if k_i != k_j:
        print("keys DIFFER", file=sys.stderr)
        return 1
    print("keys match")
    return EXIT_OK


def cmd_solve_sdpd(args) -> int:
    params = make_params(args.set, seed=args.seed)
    gp = games.GameParams(ring=params.ring, h=params.h)
    if games.sdpd_search_space(params.ring) > games.SEARCH_SPACE_GUARD:
        print("error: search space exceeds the desk-scale guard", file=sys.stderr)
        return EXIT_GUARD
    rng = _rng(args.seed)
    inst, witness = games.sdpd_challenge(gp, rng)
    found = games.sdpd_bruteforce(inst)
    planted_found = any(a == witness[0] and g == witness[1] for a, g in found)
    print(f"witnesses={len(found)}")
    print(f"planted_witness_found={str(planted_found).lower()}")
    csdp_inst, k = games.csdp_challenge(gp, rng)
    solutions = games.sdpd_bruteforce(
        games.SdpdInstance(params=gp, pk=csdp_inst.pk1)
    )
    recovered = all(
        games.csdp_verify(csdp_inst, games.csdp_key_from_witness(csdp_inst, a, g))
        for a, g in solutions
    )
    print(f"csdp_key_recovered={str(recovered).lower()}")
    return EXIT_OK


def cmd_bench(args) -> int:
    params = make_params(args.set, seed=args.seed if args.seed is not None else 0)
    ring = params.ring
    rng = random.Random(1)
    a = ring.sample_ring(rng)
    b = ring.sample_ring(rng)

    reps = 200
    t0 = time.perf_counter()
    for _ in range(reps):
        ring.add(a, b)
    t_add = (time.perf_counter() - t0) / reps
    t0 = time.perf_counter()
    for _ in range(reps):
        ring.mul(a, b)
    t_mul = (time.perf_counter() - t0) / reps
    t0 = time.perf_counter()
    for _ in range(reps):
        ring.adjunct(a)
    t_adj = (time.perf_counter() - t0) / reps

    f = costmodel.frobenius_mul_cost(ring.field)
    cf = costmodel.CountingField(ring.field)
    costmodel.counted_product(ring, cf, a, b)
    prod_adds, prod_muls = cf.count.adds, cf.count.muls
    cf.count.reset()
    costmodel.counted_adjunct(ring, cf, a)
    adj_muls = cf.count.muls
    cf.count.reset()
    costmodel.counted_addition(ring, cf, a, b)
    add_adds = cf.count.adds

    model_adds, model_muls = costmodel.product_cost_model(ring.n, f)
    print(f"set={args.set} p={params.p} n={params.n} frobenius_mul_cost={f}")
    print(f"addition_time_us={t_add * 1e6:.2f} product_time_us={t_mul * 1e6:.2f} adjunct_time_us={t_adj * 1e6:.2f}")
    print(f"product_field_adds={prod_adds} model={model_adds}")
    print(f"product_field_muls={prod_muls} model={model_muls}")
    print(f"adjunct_field_muls={adj_muls} model={costmodel.adjunct_cost_model(ring.n, f)}")
    print(f"addition_field_adds={add_adds} model={costmodel.addition_cost_model(ring.n)}")
    ok = (
        prod_adds == model_adds
        and prod_muls == model_muls
        and adj_muls == costmodel.adjunct_cost_model(ring.n, f)
        and add_adds == costmodel.addition_cost_model(ring.n)
    )
    print(f"cost_model_ok={str(ok).lower()}")
    return EXIT_OK if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sdgr", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sets = sorted(PARAM_SETS)

    p = sub.add_parser("params", help="generate a parameter file with a public h")
    p.add_argument("--set", required=True, choices=sets)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("keygen", help="generate a KEM keypair")
    p.add_argument("--params", required=True)
    p.add_argument("--out", required=True, help="private key file")
    p.add_argument("--pub", required=True, help="public key file")
    p.add_argument("--l1", type=int, default=128, choices=VALID_L1)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("encaps", help="encapsulate a session key")
    p.add_argument("--params", required=True)
    p.add_argument("--pub", required=True)
    p.add_argument("--out", required=True, help="ciphertext file")
    p.add_argument("--l1", type=int, default=128, choices=VALID_L1)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_encaps)

    p = sub.add_parser("decaps", help="decapsulate a session key")
    p.add_argument("--params", required=True)
    p.add_argument("--priv", required=True)
    p.add_argument("--in", dest="infile", required=True, help="ciphertext file")
    p.add_argument("--l1", type=int, default=0, choices=(0,) + VALID_L1)
    p.set_defaults(func=cmd_decaps)

    p = sub.add_parser("kexdemo", help="run both sides of the key exchange in-process")
    p.add_argument("--set", required=True, choices=sets)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_kexdemo)

    p = sub.add_parser("solve-sdpd", help="exhaustive decomposition solver (toy scale)")
    p.add_argument("--set", default="toy", choices=sets)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_solve_sdpd)

    p = sub.add_parser("bench", help="timings and operation-count validation")
    p.add_argument("--set", required=True, choices=sets)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except fileio.ChecksumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECKSUM
    except fileio.FileFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECKSUM
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
