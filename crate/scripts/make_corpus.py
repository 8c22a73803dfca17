#!/usr/bin/env python3
"""Export the 512x512 sample images bundled with scikit-image as binary PGM.

Colour images are converted to luminance (ITU-R BT.709 weights, as done by
skimage.color.rgb2gray) and rounded to 8 bits.
"""
import os
import sys

import numpy as np
import skimage.data
import skimage.io
from skimage.color import rgb2gray

NATURAL = ["camera", "moon", "astronaut"]
TEXTURE = ["brick", "grass", "gravel"]


def main(out_dir):
    os.makedirs(out_dir, exist_ok=True)
    base = os.path.dirname(skimage.data.__file__)
    for name in NATURAL + TEXTURE:
        img = skimage.io.imread(os.path.join(base, name + ".png"))
        if img.ndim == 3:
            img = np.round(rgb2gray(img[..., :3]) * 255.0)
        img = np.asarray(img, dtype=np.uint8)
        h, w = img.shape
        with open(os.path.join(out_dir, name + ".pgm"), "wb") as f:
            f.write(b"P5\n%d %d\n255\n" % (w, h))
            f.write(img.tobytes())
        print(name, w, h)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "crates/core/tests/data/corpus")
