"""50-point high-precision grid for erfc and the regularised upper gamma."""
import mpmath as mp

mp.mp.dps = 40
erfc_x = [-3.0, -1.5, -0.5, 0.0, 0.1, 0.3, 0.5, 0.75, 1.0, 1.3, 1.7, 2.0, 2.5, 3.0, 3.7, 4.5, 5.2, 6.0, 7.5, 9.0]
igamc_ax = [
    (0.5, 0.01), (0.5, 0.5), (0.5, 3.0), (1.0, 1.0), (1.5, 0.2), (1.5, 4.0), (2.0, 2.0), (2.5, 1.0),
    (2.5, 7.5), (3.0, 0.5), (3.0, 6.0), (4.5, 2.0), (4.5, 4.5), (4.5, 12.0), (5.0, 20.0), (7.5, 7.0),
    (10.0, 3.0), (10.0, 10.0), (10.0, 18.0), (16.0, 16.5), (32.0, 28.0), (64.0, 70.0), (128.0, 120.0),
    (256.0, 250.0), (512.0, 530.0), (1024.0, 1000.0), (4096.0, 4200.0), (16384.0, 16300.0),
    (32768.0, 32900.0), (0.5, 40.0),
]
print("// erfc")
for x in erfc_x:
    print("{%r, %s}," % (x, mp.nstr(mp.erfc(x), 20, min_fixed=-1, max_fixed=-1)))
print("// igamc")
for a, x in igamc_ax:
    print("{%r, %r, %s}," % (a, x, mp.nstr(mp.gammainc(a, x, mp.inf, regularized=True), 20, min_fixed=-1, max_fixed=-1)))
