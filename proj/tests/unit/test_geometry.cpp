#include "tdalab/geometry.hpp"
#include "tdalab/rng.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

using namespace tdalab;

namespace {

constexpr double kPi = std::numbers::pi;

PointCloud random_cloud(std::size_t n, std::size_t dim, std::uint64_t seed) {
	Rng rng(seed);
	std::vector<double> c(n * dim);
	for (auto& v : c) v = rng.uniform(-1.0, 1.0);
	return PointCloud(dim, std::move(c));
}

// Distance on the sphere / hyperboloid through an explicit embedding, independent of the
// closed-form law of cosines used by the library.
double embedded_geodesic(PolarPoint a, PolarPoint b, double kappa) {
	if (kappa == 0.0) {
		const double dx = a.rho * std::cos(a.phi) - b.rho * std::cos(b.phi);
		const double dy = a.rho * std::sin(a.phi) - b.rho * std::sin(b.phi);
		return std::hypot(dx, dy);
	}
	const double R = 1.0 / std::sqrt(std::abs(kappa));
	if (kappa > 0.0) {
		auto embed = [&](PolarPoint p) {
			const double t = p.rho / R;
			return std::array<double, 3>{std::sin(t) * std::cos(p.phi), std::sin(t) * std::sin(p.phi), std::cos(t)};
		};
		const auto u = embed(a), v = embed(b);
		const double cross_norm = std::hypot(u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]);
		const double d = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
		return R * std::atan2(cross_norm, d);
	}
	auto embed = [&](PolarPoint p) {
		const double t = p.rho / R;
		return std::array<double, 3>{std::cosh(t), std::sinh(t) * std::cos(p.phi), std::sinh(t) * std::sin(p.phi)};
	};
	const auto u = embed(a), v = embed(b);
	const double lorentz = u[0] * v[0] - u[1] * v[1] - u[2] * v[2];
	return R * std::acosh(std::max(1.0, lorentz));
}

// Arc length of the numerically traced great circle on the sphere of curvature kappa > 0,
// obtained by slerp between embedded points and summing chord lengths.
double traced_sphere_geodesic(PolarPoint a, PolarPoint b, double kappa) {
	const double R = 1.0 / std::sqrt(kappa);
	auto embed = [&](PolarPoint p) {
		const double t = p.rho / R;
		return std::array<double, 3>{R * std::sin(t) * std::cos(p.phi), R * std::sin(t) * std::sin(p.phi),
		                             R * std::cos(t)};
	};
	const auto u = embed(a), v = embed(b);
	const int steps = 20000;
	double len = 0.0;
	std::array<double, 3> prev = u;
	for (int i = 1; i <= steps; ++i) {
		const double s = static_cast<double>(i) / steps;
		std::array<double, 3> p{};
		for (int k = 0; k < 3; ++k) p[k] = (1 - s) * u[k] + s * v[k];
		const double n = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
		for (auto& x : p) x *= R / n;
		len += std::sqrt((p[0] - prev[0]) * (p[0] - prev[0]) + (p[1] - prev[1]) * (p[1] - prev[1]) +
		                 (p[2] - prev[2]) * (p[2] - prev[2]));
		prev = p;
	}
	return len;
}

int winding_number(Point2 q, const Polygon& poly) {
	int wn = 0;
	const auto& v = poly.vertices();
	for (std::size_t i = 0; i < v.size(); ++i) {
		const Point2 a = v[i], b = v[(i + 1) % v.size()];
		const double side = cross(b - a, q - a);
		if (a.y <= q.y) {
			if (b.y > q.y && side > 0) ++wn;
		} else if (b.y <= q.y && side < 0) {
			--wn;
		}
	}
	return wn;
}

} // namespace

TEST(Distance, EuclideanExamples) {
	const auto d = euclidean_distance_matrix(PointCloud::from_points(std::vector<Point2>{{0, 0}, {3, 4}}));
	EXPECT_DOUBLE_EQ(d(0, 1), 5.0);

	const auto one = euclidean_distance_matrix(PointCloud::from_points(std::vector<Point2>{{2, 7}}));
	ASSERT_EQ(one.size(), 1u);
	EXPECT_EQ(one(0, 0), 0.0);

	const auto line = euclidean_distance_matrix(PointCloud::from_points(std::vector<Point2>{{0, 0}, {1, 0}, {3, 0}}));
	EXPECT_DOUBLE_EQ(line(0, 1), 1.0);
	EXPECT_DOUBLE_EQ(line(1, 2), 2.0);
	EXPECT_DOUBLE_EQ(line(0, 2), 3.0);
}

TEST(Distance, SymmetricZeroDiagonalTriangleInequality) {
	const auto cloud = random_cloud(60, 3, 11);
	const auto d = euclidean_distance_matrix(cloud);
	for (std::size_t i = 0; i < d.size(); ++i) {
		EXPECT_EQ(d(i, i), 0.0);
		for (std::size_t j = 0; j < d.size(); ++j) EXPECT_EQ(d(i, j), d(j, i));
	}
	Rng rng(5);
	for (int t = 0; t < 1000; ++t) {
		const auto i = rng.index(60), j = rng.index(60), k = rng.index(60);
		EXPECT_LE(d(i, k), d(i, j) + d(j, k) + 1e-12);
	}
}

TEST(Distance, RejectsAsymmetricMatrix) {
	EXPECT_THROW(DistanceMatrix(2, {0, 1, 2, 0}), std::invalid_argument);
	EXPECT_THROW(DistanceMatrix(2, {1, 1, 1, 0}), std::invalid_argument);
	EXPECT_THROW(DistanceMatrix(2, {0, -1, -1, 0}), std::invalid_argument);
}

TEST(Distance, SubmatrixKeepsOrder) {
	const auto d = euclidean_distance_matrix(random_cloud(8, 2, 3));
	const std::vector<std::size_t> keep{5, 1, 7};
	const auto s = d.submatrix(keep);
	for (std::size_t a = 0; a < 3; ++a)
		for (std::size_t b = 0; b < 3; ++b) EXPECT_EQ(s(a, b), d(keep[a], keep[b]));
}

TEST(Geodesic, ThroughPoleExamples) {
	for (double kappa : {0.0, 1.0, -1.0}) EXPECT_NEAR(geodesic_distance({0.5, 0}, {0.5, kPi}, kappa), 1.0, 1e-12);
}

TEST(Geodesic, SphericalRightAngleMatchesTracedGeodesic) {
	const double d = geodesic_distance({0.5, 0}, {0.5, kPi / 2}, 1.0);
	EXPECT_NEAR(std::cos(d), std::cos(0.5) * std::cos(0.5), 1e-12);
	EXPECT_NEAR(d, traced_sphere_geodesic({0.5, 0}, {0.5, kPi / 2}, 1.0), 1e-6);
}

TEST(Geodesic, MatchesEmbeddedModels) {
	Rng rng(17);
	for (double kappa : {-2.0, -1.0, -0.3, 0.0, 0.3, 1.0, 2.0}) {
		for (int t = 0; t < 200; ++t) {
			const PolarPoint a{rng.uniform(), rng.uniform(0, 2 * kPi)}, b{rng.uniform(), rng.uniform(0, 2 * kPi)};
			EXPECT_NEAR(geodesic_distance(a, b, kappa), embedded_geodesic(a, b, kappa), 1e-9)
			    << "kappa " << kappa;
		}
	}
}

TEST(Geodesic, FlatMatrixEqualsEuclideanOfEmbedding) {
	Rng rng(2);
	std::vector<PolarPoint> pts;
	std::vector<Point2> planar;
	for (int i = 0; i < 40; ++i) {
		const PolarPoint p{rng.uniform(), rng.uniform(0, 2 * kPi)};
		pts.push_back(p);
		planar.push_back({p.rho * std::cos(p.phi), p.rho * std::sin(p.phi)});
	}
	const auto g = geodesic_distance_matrix(PolarCloud(pts, 0.0));
	const auto e = euclidean_distance_matrix(PointCloud::from_points(planar));
	for (std::size_t i = 0; i < g.size(); ++i)
		for (std::size_t j = 0; j < g.size(); ++j) EXPECT_NEAR(g(i, j), e(i, j), 1e-12);
}

TEST(Dtm, SingleNeighborAndPair) {
	const auto d = euclidean_distance_matrix(PointCloud::from_points(std::vector<Point2>{{0, 0}, {2, 0}}));
	const auto v = dtm(d, 0.5);
	EXPECT_DOUBLE_EQ(v[0], 2.0);
	EXPECT_DOUBLE_EQ(v[1], 2.0);

	const auto cloud = random_cloud(30, 2, 8);
	const auto m = euclidean_distance_matrix(cloud);
	const auto nn = dtm(m, 1.0 / 30.0);
	for (std::size_t i = 0; i < 30; ++i) {
		double best = std::numeric_limits<double>::infinity();
		for (std::size_t j = 0; j < 30; ++j)
			if (j != i) best = std::min(best, m(i, j));
		EXPECT_DOUBLE_EQ(nn[i], best);
	}
}

TEST(Dtm, GridMatchesBruteForceRms) {
	std::vector<Point2> pts;
	for (int i = 0; i < 10; ++i) pts.push_back({static_cast<double>(i % 5), static_cast<double>(i / 5)});
	const auto m = euclidean_distance_matrix(PointCloud::from_points(pts));
	const auto v = dtm(m, 0.3);
	const std::size_t k = 3; // ceil(0.3 * 10)
	for (std::size_t i = 0; i < 10; ++i) {
		std::vector<double> row;
		for (std::size_t j = 0; j < 10; ++j)
			if (j != i) row.push_back(m(i, j));
		std::sort(row.begin(), row.end());
		double s = 0.0;
		for (std::size_t a = 0; a < k; ++a) s += row[a] * row[a];
		EXPECT_NEAR(v[i], std::sqrt(s / k), 1e-12);
	}
}

TEST(Dtm, SubsetQueriesMatchFullEvaluation) {
	const auto m = euclidean_distance_matrix(random_cloud(25, 2, 4));
	const auto all = dtm(m, 0.2);
	const std::vector<std::size_t> q{3, 0, 24};
	const auto some = dtm(m, q, 0.2);
	for (std::size_t a = 0; a < q.size(); ++a) EXPECT_EQ(some[a], all[q[a]]);
	EXPECT_THROW(dtm(m, 0.0), std::invalid_argument);
	EXPECT_THROW(dtm(m, 1.5), std::invalid_argument);
}

TEST(Tubular, Examples) {
	EXPECT_DOUBLE_EQ(tubular_distance({3, 4}, Line({0, 0}, {1, 0})), 4.0);
	EXPECT_DOUBLE_EQ(tubular_distance({2, 0}, Line({0, 0}, {1, 0})), 0.0);
	EXPECT_NEAR(tubular_distance({1, 0}, Line::through({0, 0}, {1, 1})), std::sqrt(2.0) / 2, 1e-15);
}

TEST(Tubular, TranslationAndReflectionInvariance) {
	Rng rng(9);
	for (int t = 0; t < 200; ++t) {
		const Point2 a{rng.uniform(-3, 3), rng.uniform(-3, 3)};
		const double ang = rng.uniform(0, kPi);
		const Line line(a, {std::cos(ang), std::sin(ang)});
		const Point2 p{rng.uniform(-3, 3), rng.uniform(-3, 3)}, shift{rng.uniform(-5, 5), rng.uniform(-5, 5)};
		const double d = tubular_distance(p, line);
		EXPECT_NEAR(tubular_distance(p + shift, Line(a + shift, line.direction())), d, 1e-12);
		const Point2 u = line.direction();
		const Point2 rel = p - a;
		const Point2 along = dot(rel, u) * u;
		const Point2 mirrored = a + along - (rel - along);
		EXPECT_NEAR(tubular_distance(mirrored, line), d, 1e-12);
	}
}

TEST(Height, Examples) {
	const std::vector<double> up{0, 1}, right{1, 0};
	EXPECT_DOUBLE_EQ(height(std::vector<double>{0, 5}, up), 5.0);
	EXPECT_DOUBLE_EQ(height(std::vector<double>{3, -2}, right), 3.0);
	EXPECT_DOUBLE_EQ(absolute_height(std::vector<double>{3, -2}, right), 3.0);
	EXPECT_DOUBLE_EQ(height(std::vector<double>{1, -1}, up), -1.0);
	EXPECT_DOUBLE_EQ(absolute_height(std::vector<double>{1, -1}, up), 1.0);
}

TEST(FarthestPoint, PermutationAndSingle) {
	const auto cloud = random_cloud(20, 2, 1);
	auto idx = farthest_point_indices(cloud, 20, 3);
	std::sort(idx.begin(), idx.end());
	for (std::size_t i = 0; i < 20; ++i) EXPECT_EQ(idx[i], i);
	EXPECT_EQ(farthest_point_subsample(cloud, 1, 3).size(), 1u);
	EXPECT_EQ(farthest_point_subsample(cloud, 7, 42), farthest_point_subsample(cloud, 7, 42));
}

TEST(FarthestPoint, SquareCornersPlusCenter) {
	const auto cloud = PointCloud::from_points(std::vector<Point2>{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}});
	int corner_starts = 0;
	for (std::uint64_t seed = 0; seed < 40; ++seed) {
		const auto idx = farthest_point_indices(cloud, 4, seed);
		if (idx[0] == 4) continue;
		++corner_starts;
		EXPECT_EQ(std::set<std::size_t>(idx.begin(), idx.end()), (std::set<std::size_t>{0, 1, 2, 3}));
	}
	EXPECT_GT(corner_starts, 0);
}

TEST(Transform, IdentityCasesAndRotationOracle) {
	const auto cloud = PointCloud::from_points(std::vector<Point2>{{1, 0}, {0, 2}});
	EXPECT_EQ(apply_transform(cloud, {TransformKind::stretch, 1.0, 1.0}, 5), cloud);
	EXPECT_EQ(apply_transform(cloud, {TransformKind::outliers, 0.0, 0.0}, 5), cloud);

	const TransformSpec rot{TransformKind::rotation, -20, 20};
	const double deg = draw_transform_magnitude(rot, 77);
	const double th = deg * kPi / 180.0;
	const auto r = apply_transform(cloud, rot, 77);
	EXPECT_NEAR(r.coord(0, 0), std::cos(th), 1e-12);
	EXPECT_NEAR(r.coord(0, 1), -std::sin(th), 1e-12);
}

TEST(Transform, IsometriesPreserveDistances) {
	const auto cloud = random_cloud(50, 2, 21);
	const auto d0 = euclidean_distance_matrix(cloud);
	for (auto kind : {TransformKind::translation, TransformKind::rotation}) {
		const auto d1 = euclidean_distance_matrix(apply_transform(cloud, TransformSpec::standard(kind), 13));
		for (std::size_t i = 0; i < d0.entries().size(); ++i) EXPECT_NEAR(d0.entries()[i], d1.entries()[i], 1e-9);
	}
}

TEST(Transform, OutliersStayInBoundingBoxAndKeepCount) {
	const auto cloud = random_cloud(200, 3, 6);
	const auto t = apply_transform(cloud, {TransformKind::outliers, 0.1, 0.1}, 3);
	ASSERT_EQ(t.size(), cloud.size());
	std::size_t changed = 0;
	for (std::size_t i = 0; i < t.size(); ++i) {
		bool same = true;
		for (std::size_t a = 0; a < 3; ++a) {
			same = same && t.coord(i, a) == cloud.coord(i, a);
			EXPECT_GE(t.coord(i, a), -1.0);
			EXPECT_LE(t.coord(i, a), 1.0);
		}
		changed += !same;
	}
	EXPECT_EQ(changed, 20u);
}

TEST(Hull, SquareWithCenter) {
	const std::vector<Point2> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
	const auto h = convex_hull(pts);
	EXPECT_EQ(h.size(), 4u);
	EXPECT_DOUBLE_EQ(polygon_area(h), 1.0);
	const std::vector<Point2> ccw{{0, 0}, {2, 0}, {3, 2}, {1, 3}};
	const auto h2 = convex_hull(ccw);
	std::set<std::pair<double, double>> a, b;
	for (auto p : ccw) a.insert({p.x, p.y});
	for (auto p : h2.vertices()) b.insert({p.x, p.y});
	EXPECT_EQ(a, b);
}

TEST(Hull, MatchesBruteForceExtremeEdges) {
	for (std::uint64_t seed = 0; seed < 10; ++seed) {
		Rng rng(seed);
		std::vector<Point2> pts;
		for (int i = 0; i < 50; ++i) pts.push_back({rng.uniform(), rng.uniform()});
		// Brute force: p is a hull vertex iff some edge (p, q) has every other point strictly on one side.
		std::set<std::pair<double, double>> expected;
		for (std::size_t i = 0; i < pts.size(); ++i)
			for (std::size_t j = 0; j < pts.size(); ++j) {
				if (i == j) continue;
				bool all_left = true;
				for (std::size_t k = 0; k < pts.size() && all_left; ++k)
					if (k != i && k != j && cross(pts[j] - pts[i], pts[k] - pts[i]) <= 0) all_left = false;
				if (all_left) {
					expected.insert({pts[i].x, pts[i].y});
					expected.insert({pts[j].x, pts[j].y});
				}
			}
		const auto h = convex_hull(pts);
		std::set<std::pair<double, double>> got;
		for (auto p : h.vertices()) got.insert({p.x, p.y});
		EXPECT_EQ(got, expected);
		EXPECT_GT(signed_area(h.vertices()), 0.0);
		for (auto p : pts) EXPECT_TRUE(point_in_polygon(p, h));
	}
}

TEST(Polygon, AreaAndContainment) {
	const Polygon sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
	EXPECT_DOUBLE_EQ(polygon_area(sq), 1.0);
	const Polygon tri({{0, 0}, {3, 0}, {0, 3}});
	EXPECT_TRUE(point_in_polygon({1, 1}, tri));
	EXPECT_TRUE(point_in_polygon({1.5, 0}, tri)); // boundary counts as inside
	EXPECT_FALSE(point_in_polygon({2, 2}, tri));
}

TEST(Polygon, PointInPolygonMatchesWindingNumber) {
	const Polygon star({{0, 1}, {-0.2, 0.2}, {-1, 0}, {-0.2, -0.2}, {0, -1}, {0.2, -0.2}, {1, 0}, {0.2, 0.2}});
	Rng rng(12);
	for (int t = 0; t < 1000; ++t) {
		const Point2 q{rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2)};
		EXPECT_EQ(point_in_polygon(q, star), winding_number(q, star) != 0) << q.x << "," << q.y;
	}
}

TEST(Polygon, SimplicityCheck) {
	EXPECT_TRUE(is_simple(std::vector<Point2>{{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
	EXPECT_FALSE(is_simple(std::vector<Point2>{{0, 0}, {1, 1}, {1, 0}, {0, 1}}));
}

TEST(Rasterize, CornerCellCenters) {
	const auto cloud = PointCloud::from_points(std::vector<Point2>{{0.25, 0.25}, {0.75, 0.25}, {0.25, 0.75}, {0.75, 0.75}});
	const auto m = rasterize(cloud, 2);
	EXPECT_EQ(m.count(), 4u);
}

TEST(Rasterize, PolygonExtentAndLShapeArea) {
	const Polygon sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
	EXPECT_EQ(rasterize(sq, 10).count(), 100u);
	const Polygon ell({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
	const auto m = rasterize(ell, 20);
	EXPECT_NEAR(static_cast<double>(m.count()) / 400.0, 0.75, 0.05 * 0.75);
}

TEST(Rasterize, RejectsThreeDimensionalClouds) {
	EXPECT_THROW(rasterize(random_cloud(5, 3, 1), 10), std::invalid_argument);
}

TEST(ConvexityMeasure, SquareAndL) {
	EXPECT_DOUBLE_EQ(convexity_measure(BinaryMask(2, {1, 1, 1, 1})), 1.0);
	// Three cells of a 2x2 grid are digitally convex: the fourth center lies outside their hull.
	EXPECT_DOUBLE_EQ(convexity_measure(BinaryMask(2, {1, 1, 1, 0})), 1.0);
	// Three quadrants of a square at fine resolution approach area / hull area = 0.75 / 0.875.
	const std::size_t c = 80;
	std::vector<std::uint8_t> cells(c * c, 1);
	for (std::size_t iy = c / 2; iy < c; ++iy)
		for (std::size_t ix = c / 2; ix < c; ++ix) cells[iy * c + ix] = 0;
	EXPECT_NEAR(convexity_measure(BinaryMask(c, cells)), 6.0 / 7.0, 0.01);
}

TEST(ConvexityMeasure, HoleInsideLowersMeasure) {
	std::vector<std::uint8_t> cells(25, 1);
	cells[12] = 0;
	EXPECT_DOUBLE_EQ(convexity_measure(BinaryMask(5, cells)), 24.0 / 25.0);
}

TEST(ConvexityMeasure, CollinearMaskIsAnError) {
	EXPECT_THROW(convexity_measure(BinaryMask(3, {1, 1, 1, 0, 0, 0, 0, 0, 0})), std::invalid_argument);
}

TEST(ConvexityMeasure, ConvexPolygonsNearOneAtSide40) {
	for (std::uint64_t seed = 0; seed < 30; ++seed) {
		Rng rng(seed);
		std::vector<Point2> pts;
		for (int i = 0; i < 10; ++i) pts.push_back({rng.uniform(), rng.uniform()});
		EXPECT_GE(convexity_measure(rasterize(convex_hull(pts), 40)), 0.97) << seed;
	}
}

TEST(Resample, FullMaskStaysFull) {
	const BinaryMask m(4, std::vector<std::uint8_t>(16, 1));
	EXPECT_EQ(resample(m, 8).count(), 64u);
}

TEST(Resample, HalvingKeepsBlockPattern) {
	// 4x4 checkerboard of 2x2 blocks halves to a 2x2 checkerboard.
	std::vector<std::uint8_t> cells(16, 0);
	for (std::size_t iy = 0; iy < 4; ++iy)
		for (std::size_t ix = 0; ix < 4; ++ix) cells[iy * 4 + ix] = ((ix / 2 + iy / 2) % 2 == 0) ? 1 : 0;
	const auto r = resample(BinaryMask(4, cells), 2);
	EXPECT_TRUE(r.occupied(0, 0));
	EXPECT_FALSE(r.occupied(1, 0));
	EXPECT_FALSE(r.occupied(0, 1));
	EXPECT_TRUE(r.occupied(1, 1));
	EXPECT_DOUBLE_EQ(r.cell_width(), 2.0);
}
