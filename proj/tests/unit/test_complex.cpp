#include "tdalab/complex.hpp"
#include "tdalab/persistence.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

using namespace tdalab;

namespace {

DistanceMatrix matrix_of(const std::vector<Point2>& pts) {
	return euclidean_distance_matrix(PointCloud::from_points(pts));
}

DistanceMatrix random_matrix(std::size_t n, std::uint64_t seed) {
	std::mt19937_64 g(seed);
	std::uniform_real_distribution<double> u(0.0, 1.0);
	std::vector<Point2> pts(n);
	for (auto& p : pts) p = {u(g), u(g)};
	return matrix_of(pts);
}

std::map<std::array<std::uint32_t, 3>, double> by_vertices(const FilteredComplex& c) {
	std::map<std::array<std::uint32_t, 3>, double> m;
	for (const auto& s : c.simplices()) {
		auto key = s.vertices;
		for (int i = s.dim + 1; i < 3; ++i) key[static_cast<std::size_t>(i)] = UINT32_MAX;
		m[key] = s.value;
	}
	return m;
}

// Smallest r >= max(fu, fv) at which balls of radius r - fu and r - fv meet,
// by bisection.
double two_ball_oracle(double fu, double fv, double d) {
	double lo = std::max(fu, fv);
	if ((lo - fu) + (lo - fv) >= d) return lo;
	double hi = lo + d;
	for (int i = 0; i < 200; ++i) {
		const double mid = 0.5 * (lo + hi);
		((mid - fu) + (mid - fv) >= d ? hi : lo) = mid;
	}
	return hi;
}

void expect_closed_and_monotone(const FilteredComplex& c) {
	const auto values = by_vertices(c);
	const auto value_of = [&](std::array<std::uint32_t, 3> k) {
		const auto it = values.find(k);
		EXPECT_NE(it, values.end());
		return it == values.end() ? 0.0 : it->second;
	};
	for (std::size_t i = 0; i < c.size(); ++i) {
		const auto& s = c.simplices()[i];
		if (i > 0) EXPECT_FALSE(filtration_less(s, c.simplices()[i - 1]));
		const auto& v = s.vertices;
		if (s.dim == 1) {
			EXPECT_LE(value_of({v[0], UINT32_MAX, UINT32_MAX}), s.value);
			EXPECT_LE(value_of({v[1], UINT32_MAX, UINT32_MAX}), s.value);
		} else if (s.dim == 2) {
			EXPECT_LE(value_of({v[0], v[1], UINT32_MAX}), s.value);
			EXPECT_LE(value_of({v[0], v[2], UINT32_MAX}), s.value);
			EXPECT_LE(value_of({v[1], v[2], UINT32_MAX}), s.value);
		}
	}
}

} // namespace

// ---------------------------------------------------------------------------
// Rips

TEST(RipsComplex, UnitSquareTrianglesAtDiagonal) {
	const auto c = rips_complex(matrix_of({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
	EXPECT_EQ(c.count(0), 4u);
	EXPECT_EQ(c.count(1), 6u);
	EXPECT_EQ(c.count(2), 4u);
	for (const auto& s : c.simplices())
		if (s.dim == 2) EXPECT_DOUBLE_EQ(s.value, std::sqrt(2.0));
}

TEST(RipsComplex, TwoPoints) {
	const auto c = rips_complex(matrix_of({{0, 0}, {3, 4}}));
	ASSERT_EQ(c.size(), 3u);
	EXPECT_EQ(c.simplices()[0].value, 0.0);
	EXPECT_EQ(c.simplices()[1].value, 0.0);
	EXPECT_EQ(c.simplices()[2].dim, 1);
	EXPECT_DOUBLE_EQ(c.simplices()[2].value, 5.0);
}

TEST(RipsComplex, CompleteCountIsBinomial) {
	for (std::size_t n : {1u, 2u, 5u, 10u, 17u}) {
		const auto c = rips_complex(random_matrix(n, n));
		EXPECT_EQ(c.size(), n + n * (n - 1) / 2 + n * (n - 1) * (n - 2) / 6) << n;
		expect_closed_and_monotone(c);
	}
}

TEST(RipsComplex, TruncatedIsBoundedAndMonotone) {
	const auto m = random_matrix(10, 3);
	const auto c = rips_complex(m, {2, 0.4, false});
	EXPECT_LE(c.size(), 10u + 45u + 120u);
	for (const auto& s : c.simplices()) EXPECT_LE(s.value, 0.4);
	expect_closed_and_monotone(c);
}

TEST(RipsComplex, ValuesFollowMaxEdgeRule) {
	const auto m = random_matrix(8, 5);
	for (const auto& s : rips_complex(m).simplices()) {
		const auto& v = s.vertices;
		if (s.dim == 0) EXPECT_EQ(s.value, 0.0);
		if (s.dim == 1) EXPECT_EQ(s.value, m(v[0], v[1]));
		if (s.dim == 2) EXPECT_EQ(s.value, std::max({m(v[0], v[1]), m(v[0], v[2]), m(v[1], v[2])}));
	}
}

TEST(RipsComplex, MaxDimCapsSimplices) {
	const auto m = random_matrix(6, 2);
	EXPECT_EQ(rips_complex(m, {1, {}, false}).max_dim(), 1);
	EXPECT_EQ(rips_complex(m, {0, {}, false}).size(), 6u);
}

TEST(RipsComplex, GuardsLargeTriangleBuilds) {
	std::vector<double> zeros((kRipsTriangleGuard + 1) * (kRipsTriangleGuard + 1), 0.0);
	const DistanceMatrix m(kRipsTriangleGuard + 1, zeros);
	EXPECT_THROW(rips_complex(m), std::invalid_argument);
	EXPECT_NO_THROW(rips_complex(m, {1, {}, false}));
	EXPECT_THROW(rips_complex(random_matrix(3, 1), {2, -1.0, false}), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Weighted Rips

TEST(WeightedRips, SwallowedBirth) {
	EXPECT_DOUBLE_EQ(weighted_edge_value(0.0, 5.0, 3.0), 5.0);
	EXPECT_DOUBLE_EQ(weighted_edge_value(5.0, 0.0, 3.0), 5.0);
}

TEST(WeightedRips, ZeroWeightsHalveDistances) {
	const auto m = random_matrix(7, 9);
	const std::vector<double> f(7, 0.0);
	const auto w = by_vertices(weighted_rips_complex(m, f));
	for (const auto& [k, v] : w)
		if (k[1] != UINT32_MAX && k[2] == UINT32_MAX) EXPECT_DOUBLE_EQ(v, 0.5 * m(k[0], k[1]));
}

TEST(WeightedRips, ConstantWeightsShiftRips) {
	const auto m = random_matrix(7, 10);
	const double c = 0.3;
	const std::vector<double> f(7, c);
	const auto w = by_vertices(weighted_rips_complex(m, f));
	const auto r = by_vertices(rips_complex(m));
	for (const auto& [k, v] : r) {
		const bool vertex = k[1] == UINT32_MAX;
		EXPECT_NEAR(w.at(k), vertex ? c : c + 0.5 * v, 1e-12);
	}
}

TEST(WeightedRips, EdgeRuleMatchesTwoBallOracle) {
	std::mt19937_64 g(4);
	std::uniform_real_distribution<double> u(0.0, 2.0);
	for (int i = 0; i < 500; ++i) {
		const double fu = u(g), fv = u(g), d = u(g);
		const double e = weighted_edge_value(fu, fv, d);
		EXPECT_NEAR(e, two_ball_oracle(fu, fv, d), 1e-12);
		EXPECT_GE(e, std::max(fu, fv));
	}
}

TEST(WeightedRips, VertexValuesAndMonotone) {
	const auto m = random_matrix(9, 12);
	std::vector<double> f(9);
	for (std::size_t i = 0; i < f.size(); ++i) f[i] = 0.05 * static_cast<double>(i);
	const auto c = weighted_rips_complex(m, f);
	for (const auto& s : c.simplices())
		if (s.dim == 0) EXPECT_DOUBLE_EQ(s.value, f[s.vertices[0]]);
	expect_closed_and_monotone(c);
	EXPECT_THROW(weighted_rips_complex(m, std::vector<double>(8, 0.0)), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// FilteredComplex validation

TEST(FilteredComplexCheck, RejectsMissingFaceAndNonMonotone) {
	std::vector<Simplex> missing{{{0, 0, 0}, 0, 0.0}, {{0, 1, 0}, 1, 1.0}};
	EXPECT_THROW(FilteredComplex::from_simplices(missing), std::invalid_argument);
	std::vector<Simplex> bad{{{0, 0, 0}, 0, 0.0}, {{1, 0, 0}, 0, 2.0}, {{0, 1, 0}, 1, 1.0}};
	EXPECT_THROW(FilteredComplex::from_simplices(bad), std::invalid_argument);
	std::vector<Simplex> ok{{{1, 0, 0}, 0, 0.5}, {{0, 1, 0}, 1, 1.0}, {{0, 0, 0}, 0, 0.0}};
	const auto c = FilteredComplex::from_simplices(ok);
	EXPECT_EQ(c.simplices().front().vertices[0], 0u);
	EXPECT_EQ(c.vertex_bound(), 2u);
}

// ---------------------------------------------------------------------------
// Cubical

TEST(Cubical, BottomRowLowerUnderBottomLine) {
	const BinaryMask m(2, std::vector<std::uint8_t>(4, 1));
	const auto g = cubical_complex(m, TubularFunction{Line({0, 0}, {1, 0})});
	EXPECT_LT(g.top_value(0, 0), g.top_value(0, 1));
	EXPECT_LT(g.top_value(1, 0), g.top_value(1, 1));
	EXPECT_DOUBLE_EQ(g.top_value(0, 0), 0.5);
	EXPECT_DOUBLE_EQ(g.top_value(1, 1), 1.5);
}

TEST(Cubical, SingleCellFacesShareValue) {
	std::vector<std::uint8_t> cells(9, 0);
	cells[4] = 1;
	const auto g = cubical_complex(BinaryMask(3, cells), HeightFunction{{0, 1}});
	const double v = g.top_value(1, 1);
	EXPECT_TRUE(std::isfinite(v));
	std::size_t finite = 0;
	for (std::size_t ky = 0; ky < g.extent(); ++ky)
		for (std::size_t kx = 0; kx < g.extent(); ++kx) {
			const double c = g.cell_value(kx, ky);
			if (std::isfinite(c)) {
				++finite;
				EXPECT_EQ(c, v);
				EXPECT_GE(kx, 2u);
				EXPECT_LE(kx, 4u);
			}
		}
	EXPECT_EQ(finite, 9u);
}

TEST(Cubical, LowerCellsTakeMinOfIncidentTops) {
	std::mt19937_64 g(8);
	std::uniform_real_distribution<double> u(0.0, 1.0);
	const std::size_t side = 5;
	std::vector<double> top(side * side);
	for (auto& t : top) t = u(g) < 0.2 ? FilteredCubicalGrid::kAbsent : u(g);
	const FilteredCubicalGrid grid(side, top);
	for (std::size_t ky = 0; ky < grid.extent(); ++ky)
		for (std::size_t kx = 0; kx < grid.extent(); ++kx) {
			double expect = FilteredCubicalGrid::kAbsent;
			for (std::size_t iy = 0; iy < side; ++iy)
				for (std::size_t ix = 0; ix < side; ++ix) {
					const bool incident = kx >= 2 * ix && kx <= 2 * ix + 2 && ky >= 2 * iy && ky <= 2 * iy + 2;
					if (incident) expect = std::min(expect, top[iy * side + ix]);
				}
			EXPECT_EQ(grid.cell_value(kx, ky), expect) << kx << "," << ky;
		}
}

TEST(Cubical, MonotoneUnderFaceRelation) {
	const auto mask = rasterize(Polygon({{0, 0}, {4, 0}, {4, 1}, {1, 1}, {1, 4}, {0, 4}}), 12);
	const auto g = cubical_complex(mask, TubularFunction{Line::through({0, 0}, {1, 1})});
	for (std::size_t ky = 0; ky < g.extent(); ++ky)
		for (std::size_t kx = 0; kx < g.extent(); ++kx) {
			const double v = g.cell_value(kx, ky);
			if (kx & 1) {
				EXPECT_LE(g.cell_value(kx - 1, ky), v);
				EXPECT_LE(g.cell_value(kx + 1, ky), v);
			}
			if (ky & 1) {
				EXPECT_LE(g.cell_value(kx, ky - 1), v);
				EXPECT_LE(g.cell_value(kx, ky + 1), v);
			}
		}
}

TEST(Cubical, DiagonalNeighboursConnect) {
	std::vector<std::uint8_t> cells{1, 0, 0, 1};
	const auto g = cubical_complex(BinaryMask(2, cells), HeightFunction{{0, 1}});
	const auto pd = compute_ph(g, 0);
	ASSERT_EQ(pd.size(), 1u);
	EXPECT_EQ(pd.intervals()[0].birth, 0.5);
	EXPECT_FALSE(pd.intervals()[0].finite());
}

TEST(Cubical, AbsoluteHeightIsSymmetric) {
	const CellFunction f = AbsoluteHeightFunction{{1, 0}};
	EXPECT_DOUBLE_EQ(evaluate(f, {-2, 7}), evaluate(f, {2, -3}));
	EXPECT_DOUBLE_EQ(evaluate(HeightFunction{{1, 0}}, {-2, 7}), -2.0);
}

TEST(Cubical, UMaskHasTwoComponentsEarly) {
	// Columns 0 and 4 are the arms, row 0 the base; the line runs along the open top.
	const std::size_t side = 5;
	std::vector<std::uint8_t> cells(side * side, 0);
	for (std::size_t iy = 0; iy < side; ++iy) cells[iy * side] = cells[iy * side + side - 1] = 1;
	for (std::size_t ix = 0; ix < side; ++ix) cells[ix] = 1;
	const BinaryMask mask(side, cells);
	const auto g = cubical_complex(mask, TubularFunction{Line({0, 5}, {1, 0})});
	const auto pd = compute_ph(g, 0);
	ASSERT_EQ(pd.size(), 2u);
	// Arm tops appear at 0.5; the base joins them at 4.5.
	EXPECT_EQ(pd.intervals()[0].birth, 0.5);
	EXPECT_EQ(pd.intervals()[1].birth, 0.5);
	const double death = std::min(pd.intervals()[0].death, pd.intervals()[1].death);
	EXPECT_DOUBLE_EQ(death, 4.5);
}
