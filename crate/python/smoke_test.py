"""Smoke test for the gddetf extension module."""

import gddetf

assert gddetf.classify(6, 16) == [(2, 1, 3), (4, -1, 3)]
assert gddetf.classify(3, 6) == []
assert gddetf.status(4, -1, 19) == "known-per-paper (Thm 1.2a)"
assert gddetf.status(14, -1, 13) == "unknown"

td = gddetf.Design.td(3, 3)
assert (td.k, td.u, td.m, len(td)) == (3, 3, 3, 9)
assert gddetf.Design.parse(td.to_text()).to_text() == td.to_text()
g37 = gddetf.Design.product(td, gddetf.Design.sts(7))
assert g37.to_text().startswith("GDD 3 7 3 63\n")

seed = gddetf.simplex(gddetf.Hadamard.fourier(3))
etf = gddetf.gdd_etf(seed, td, gddetf.Hadamard.fourier(1), gddetf.Hadamard.sylvester(2))
cert = etf.certificate()
assert cert and (cert.d, cert.n, cert.s, cert.t, cert.a) == (15, 36, 5, 1, "12"), cert
assert (3, -1, 5) in cert.types
assert gddetf.Frame.parse(etf.to_text()).to_text() == etf.to_text()
assert set(etf.naimark()) == {12 - 5}

steiner = gddetf.steiner_etf(gddetf.Design.pairs(4), gddetf.Hadamard.sylvester(2))
assert repr(steiner.certificate()) == "ETF D=6 N=16 s=3 t=1 A=8"

aug = gddetf.mols_frame(gddetf.Design.td(2, 4), gddetf.Hadamard.sylvester(2), "augmented")
assert not aug.certificate()
assert aug.tdtf()[0]

h = gddetf.Hadamard.paley2(5)
assert h.size == 12 and h.is_real and not h.is_dephased
assert gddetf.Hadamard.parse(h.to_text()).size == 12

try:
    gddetf.Design.sts(5)
except ValueError:
    pass
else:
    raise AssertionError("sts(5) should fail")

bad = etf.to_text().replace("1,0", "2,0", 1)
assert not gddetf.Frame.parse(bad).certificate()

print("smoke test passed:", cert)
