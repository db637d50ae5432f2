#!/usr/bin/env python3
# Copyright 2026 The DataCollab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes a gzip IDX copy of the 10,000 MNIST digits shipped in the npm
`mnist` package (src/digits/<d>.json, pixels stored as value/255 rounded to
three decimals).

The digits are shuffled with a fixed seed and split into a train and a test
file pair using the standard IDX names, so the C++ loader reads them exactly
like the official distribution.

    npm pack mnist && tar xzf mnist-*.tgz
    python3 tools/make_mnist_subset.py package/src/digits data/mnist
"""

import argparse
import gzip
import json
import random
import struct
from pathlib import Path

ROWS = COLS = 28


def load_digits(digits_dir):
    samples = []
    for label in range(10):
        payload = json.loads((Path(digits_dir) / f"{label}.json").read_text())
        flat = payload["data"]
        assert len(flat) % (ROWS * COLS) == 0
        for i in range(len(flat) // (ROWS * COLS)):
            pixels = flat[i * ROWS * COLS:(i + 1) * ROWS * COLS]
            raw = bytes(min(255, max(0, round(v * 255))) for v in pixels)
            samples.append((raw, label))
    return samples


def write_idx(path, images, labels):
    with gzip.GzipFile(path.with_name(path.name + "-images-idx3-ubyte.gz"), "wb", mtime=0) as f:
        f.write(struct.pack(">IIII", 0x00000803, len(images), ROWS, COLS))
        for raw in images:
            f.write(raw)
    with gzip.GzipFile(path.with_name(path.name + "-labels-idx1-ubyte.gz"), "wb", mtime=0) as f:
        f.write(struct.pack(">II", 0x00000801, len(labels)))
        f.write(bytes(labels))


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("digits_dir")
    parser.add_argument("out_dir")
    parser.add_argument("--test", type=int, default=4000)
    parser.add_argument("--seed", type=int, default=20210101)
    args = parser.parse_args()

    samples = load_digits(args.digits_dir)
    random.Random(args.seed).shuffle(samples)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    test, train = samples[:args.test], samples[args.test:]
    write_idx(out / "train", [s[0] for s in train], [s[1] for s in train])
    write_idx(out / "t10k", [s[0] for s in test], [s[1] for s in test])
    print(f"train={len(train)} test={len(test)} -> {out}")


if __name__ == "__main__":
    main()
