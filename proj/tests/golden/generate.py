#!/usr/bin/env python3
"""Regenerates the frozen golden vectors from hashlib alone."""
import hashlib
import pathlib
import struct

HERE = pathlib.Path(__file__).parent
ALGOS = {"sha256": hashlib.sha256, "sha3_256": hashlib.sha3_256}

LEAF, INNER = 0, 1


def tagged(h, tag, payload):
    return h(bytes([tag]) + payload).digest()


def u64(v):
    return struct.pack(">Q", v)


def leaf_digest(h, leaf):
    return tagged(h, LEAF, u64(len(leaf)) + leaf)


def inner_digest(h, children):
    return tagged(h, INNER, u64(len(children)) + b"".join(children))


def tree_root(h, digests, m):
    level = list(digests)
    while len(level) > 1:
        level = [inner_digest(h, level[i:i + m]) for i in range(0, len(level), m)]
    return level[0]


def peaks(h, n, m):
    leaves = [leaf_digest(h, u64(i)) for i in range(n)]
    sizes = [1 << b for b in range(n.bit_length() - 1, -1, -1) if n >> b & 1]
    out, off = [], 0
    for s in sizes:
        out.append(tree_root(h, leaves[off:off + s], m))
        off += s
    return sizes, out


def main():
    payloads = [b"", b"\x00", b"abc", bytes(range(64)), b"lazy ledger" * 13]
    for name, h in ALGOS.items():
        rows = []
        for tag in range(6):
            for p in payloads:
                rows.append(f"{tag:02x},{p.hex()},{tagged(h, tag, p).hex()}")
        (HERE / f"hash_{name}.csv").write_text("tag,payload,digest\n" + "\n".join(rows) + "\n")

        rows = []
        for m in (2, 3, 4, 16):
            for n in (1, 2, 3, 5, 8, 13, 64, 100, 255):
                sizes, roots = peaks(h, n, m)
                rows.append(f"{m},{n},{';'.join(map(str, sizes))},{';'.join(r.hex() for r in roots)}")
        (HERE / f"mmr_{name}.csv").write_text("arity,leaves,sizes,roots\n" + "\n".join(rows) + "\n")


if __name__ == "__main__":
    main()
