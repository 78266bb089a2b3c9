# Walk one packet through the whole imaging pipeline, step by step:
# pad into an n x 8 byte matrix, shuffle, render as a gray RGB raster,
# and write a deterministic PNG.

from pathlib import Path

from packetvision import ShuffleSpec, encode_png, render, shuffle, to_matrix

out_dir = Path("demo_output/01_packet_to_image")
out_dir.mkdir(parents=True, exist_ok=True)

# A fake 26-byte packet. Real packets come from read_packets(); any byte
# string works the same way.
packet = bytes(range(0x40, 0x5A))
print(f"packet ({len(packet)} bytes): {packet.hex(' ')}")

# Step 1: lay the bytes into ceil(26/8) = 4 rows of 8, padding the last
# row with 0xFF.
matrix = to_matrix(packet)
print(f"\nmatrix: {matrix.rows} rows x {matrix.width} cols, pad_count={matrix.pad_count}")
for r in range(matrix.rows):
    row = matrix.data[r * 8 : (r + 1) * 8]
    print("  " + " ".join(f"{b:3d}" for b in row))

# Step 2: shuffle with Poisson-distributed displacements. lam is the mean
# displacement in byte positions; 8.0 moves a byte one full row on
# average. The seed makes the permutation reproducible.
spec = ShuffleSpec(lam=8.0, seed=2024)
shuffled = shuffle(matrix, spec)
print(f"\nshuffled with lam={spec.lam}, seed={spec.seed}:")
for r in range(shuffled.rows):
    row = shuffled.data[r * 8 : (r + 1) * 8]
    print("  " + " ".join(f"{b:3d}" for b in row))

# Same input, same spec => same permutation, always.
assert shuffle(matrix, spec).data == shuffled.data

# lam=0 is the identity shuffle.
assert shuffle(matrix, ShuffleSpec(lam=0.0, seed=2024)).data == matrix.data

# Step 3: each byte value v becomes the gray pixel (v, v, v).
image = render(shuffled)
print(f"\nimage: {image.height} x {image.width} pixels, RGB with R == G == B")

# Step 4: encode. The PNG bytes are a pure function of the pixels, so
# re-encoding writes the identical file.
png_path = out_dir / "packet.png"
encode_png(image, png_path)
print(f"wrote {png_path} ({png_path.stat().st_size} bytes)")

before = png_path.read_bytes()
encode_png(image, png_path)
assert png_path.read_bytes() == before
print("re-encoding produced byte-identical output")
