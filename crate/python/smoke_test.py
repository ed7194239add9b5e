"""Import check for the lieforge extension module."""

import json

import lieforge


def main():
    assert lieforge.feasible_spin(5, 24) == [5, 6, 8, 9, 10, 12, 16]

    assert lieforge.trivial_multiplicity("D6", "halfspin+", 2) == 1
    assert lieforge.trivial_multiplicity("B4", "spin", 4) == 0

    report = json.loads(lieforge.construct("f4"))
    assert report["command"] == "construct"
    assert all(c["status"] == "pass" for c in report["claims"])

    dec = json.loads(lieforge.decompose("D4", "halfspin+", 2))
    dims = sorted(int(s["dim"]) for s in dec["details"]["summands"])
    assert dims == [28], dims

    scan = json.loads(lieforge.scan(7, 7))
    assert scan["details"]["feasible"] == []

    try:
        lieforge.construct("g2")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown target accepted")

    print("smoke test ok")


if __name__ == "__main__":
    main()
