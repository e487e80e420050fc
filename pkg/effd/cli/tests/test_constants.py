from effd.lib.formats import format_rational
from effd.lib.witnesses import C0
from effd.test import BaseTestCase


class ConstantsTestCase(BaseTestCase):
    def test_it_prints_the_fixed_constants(self):
        rows = self.report("constants")
        by_name = {row["name"]: row for row in rows}

        self.assertEqual(by_name["C0"]["value"], format_rational(C0))
        self.assertEqual(by_name["C_phi"]["value"], "7381/2520")
        self.assertEqual(by_name["K3"]["value"], 3)
        self.assertEqual(set(by_name["K3"]["enclosure"]), {"center", "radius"})
        self.assertNotIn("C1", by_name)
        self.assertTrue(by_name["C(4)"]["certified"])
        self.assertTrue(by_name["C(100)"]["certified"])

    def test_it_adds_witness_constants(self):
        rows = self.report("constants", "--witness", "geometric", "--witness", "single:3/7")
        by_name = {row["name"]: row for row in rows}

        self.assertTrue(by_name["C1"]["certified"])
        self.assertEqual(by_name["K4"]["value"], 1)
        self.assertEqual(by_name["K5"]["value"], 5)

    def test_it_checks_selected_bounds(self):
        rows = self.report("constants", "--c-bound", "16")
        names = [row["name"] for row in rows]

        self.assertEqual(names, ["C0", "C_phi", "K3", "C(16)"])
        self.assertTrue(rows[-1]["certified"])
