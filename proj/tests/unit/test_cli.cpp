#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Result {
	int code = -1;
	std::string out;
	std::string err;
};

// One directory per test so parallel ctest runs do not collide.
fs::path scratch() {
	const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
	const auto dir = fs::temp_directory_path() / (std::string("tdalab_cli_") + info->name());
	static std::string made;
	if (made != dir.string()) {
		fs::remove_all(dir);
		fs::create_directories(dir);
		made = dir.string();
	}
	return dir;
}

std::string slurp(const fs::path& p) {
	std::ifstream in(p, std::ios::binary);
	std::stringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

Result run(const std::string& args, const std::string& env = "") {
	const auto err = scratch() / "stderr.txt";
	const std::string cmd = env + " \"" TDALAB_CLI_PATH "\" " + args + " 2>\"" + err.string() + "\"";
	Result r;
	FILE* pipe = popen(cmd.c_str(), "r");
	if (!pipe) return r;
	std::array<char, 4096> buf{};
	std::size_t n;
	while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
	const int status = pclose(pipe);
	r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
	r.err = slurp(err);
	return r;
}

void write(const fs::path& p, const std::string& text) {
	std::ofstream(p, std::ios::binary) << text;
}

std::size_t count_files(const fs::path& dir, const std::string& ext) {
	std::size_t n = 0;
	for (const auto& e : fs::recursive_directory_iterator(dir)) n += e.path().extension() == ext;
	return n;
}

} // namespace

TEST(Cli, HelpAndUnknownCommand) {
	EXPECT_EQ(run("--help").code, 0);
	EXPECT_NE(run("frobnicate").code, 0);
	EXPECT_NE(run("generate spirals -o " + (scratch() / "x").string()).code, 0);
}

TEST(Cli, GenerateHolesCountsAndDeterminism) {
	const auto a = scratch() / "holes_a", b = scratch() / "holes_b";
	const auto r1 = run("--seed 7 generate holes --clouds-per-shape 2 --points 300 -o " + a.string());
	ASSERT_EQ(r1.code, 0) << r1.err;
	EXPECT_EQ(count_files(a, ".csv"), 40u);
	ASSERT_TRUE(fs::exists(a / "manifest.json"));
	const auto manifest = nlohmann::json::parse(slurp(a / "manifest.json"));
	EXPECT_EQ(manifest.at("labels").size(), 40u);
	ASSERT_EQ(run("--seed 7 generate holes --clouds-per-shape 2 --points 300 -o " + b.string()).code, 0);
	EXPECT_EQ(slurp(a / "manifest.json"), slurp(b / "manifest.json"));
	EXPECT_TRUE(r1.out.empty());
}

TEST(Cli, SeedFallsBackToEnvironment) {
	const auto a = scratch() / "env_a", b = scratch() / "env_b";
	ASSERT_EQ(run("generate masks --count 4 -o " + a.string(), "TDA_LAB_SEED=13").code, 0);
	ASSERT_EQ(run("--seed 13 generate masks --count 4 -o " + b.string()).code, 0);
	EXPECT_EQ(slurp(a / "manifest.json"), slurp(b / "manifest.json"));
}

TEST(Cli, GenerateRegularConvexityListsAllItems) {
	const auto dir = scratch() / "convex_regular";
	const auto r = run("generate convexity --kind regular --points 20 -o " + dir.string());
	ASSERT_EQ(r.code, 0) << r.err;
	const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
	EXPECT_EQ(manifest.at("labels").size(), 480u);
}

TEST(Cli, PhTwoPoints) {
	const auto in = scratch() / "two.csv";
	write(in, "0,0\n2,0\n");
	const auto r = run("ph " + in.string() + " -o -");
	ASSERT_EQ(r.code, 0) << r.err;
	EXPECT_EQ(r.out, "dim,birth,death\n0,0,2\n0,0,inf\n");
}

TEST(Cli, PhUnitSquareLoopAndSvg) {
	const auto in = scratch() / "square.csv", svg = scratch() / "square.svg";
	write(in, "0,0\n1,0\n1,1\n0,1\n");
	const auto r = run("ph " + in.string() + " -o - --svg " + svg.string());
	ASSERT_EQ(r.code, 0) << r.err;
	EXPECT_NE(r.out.find("1,1,1.4142135623730951"), std::string::npos) << r.out;
	EXPECT_NE(slurp(svg).find("<svg"), std::string::npos);
	const auto j = run("--format json ph " + in.string() + " -o -");
	ASSERT_EQ(j.code, 0);
	EXPECT_TRUE(nlohmann::json::accept(j.out));
}

TEST(Cli, PhFullSquareMaskTubular) {
	const auto in = scratch() / "full.pbm";
	write(in, "P1\n4 4\n1 1 1 1\n1 1 1 1\n1 1 1 1\n1 1 1 1\n");
	const auto r = run("ph " + in.string() + " -o - --filtration tubular --line bottom");
	ASSERT_EQ(r.code, 0) << r.err;
	EXPECT_EQ(r.out, "dim,birth,death\n0,0.5,inf\n");
}

TEST(Cli, PhMalformedInputReportsLine) {
	const auto in = scratch() / "bad.csv";
	write(in, "0,0\n1,zz\n");
	const auto r = run("ph " + in.string() + " -o -");
	EXPECT_EQ(r.code, 1);
	EXPECT_NE(r.err.find("bad.csv:2"), std::string::npos) << r.err;
	EXPECT_TRUE(r.out.empty());
}

TEST(Cli, PhComplexDump) {
	const auto in = scratch() / "pair.csv", dump = scratch() / "pair_complex.csv";
	write(in, "0,0\n3,4\n");
	ASSERT_EQ(run("ph " + in.string() + " -o - --dump-complex " + dump.string()).code, 0);
	EXPECT_EQ(slurp(dump), "dim,value,v0,v1,v2\n0,0,0\n0,0,1\n1,5,0,1\n");
}

TEST(Cli, RunConvexityPrintsFourRegimesDeterministically) {
	const auto data = scratch() / "convexity_both";
	ASSERT_EQ(run("--seed 3 generate convexity --kind both --clouds-per-shape 4 --per-label 16 --points 300 -o " +
	              data.string())
	              .code,
	          0);
	const auto rep1 = scratch() / "conv1.json", rep2 = scratch() / "conv2.json";
	const auto r = run("--seed 3 run convexity -d " + data.string() + " -o " + rep1.string());
	ASSERT_EQ(r.code, 0) << r.err;
	for (const char* name : {"regular-regular", "random-random", "regular-random", "random-regular"})
		EXPECT_NE(r.out.find(name), std::string::npos) << name;
	ASSERT_EQ(run("--seed 3 --jobs 3 run convexity -d " + data.string() + " -o " + rep2.string()).code, 0);
	EXPECT_EQ(slurp(rep1), slurp(rep2));
	const auto report = nlohmann::json::parse(slurp(rep1));
	EXPECT_EQ(report.at("experiment"), "convexity");
	EXPECT_EQ(report.at("regimes").size(), 4u);
	EXPECT_TRUE(report.at("items").is_array());
}

TEST(Cli, RunHolesPrintsSevenRegimes) {
	const auto data = scratch() / "holes_run";
	ASSERT_EQ(run("generate holes --clouds-per-shape 2 --points 100 -o " + data.string()).code, 0);
	const auto r = run("--subsample 30 --format json run holes -d " + data.string() + " -o " +
	                   (scratch() / "holes.json").string());
	ASSERT_EQ(r.code, 0) << r.err;
	const auto rows = nlohmann::json::parse(r.out);
	ASSERT_EQ(rows.size(), 7u);
	EXPECT_EQ(rows[0].at("name"), "clean");
}

TEST(Cli, RunRejectsMismatchedManifest) {
	const auto data = scratch() / "masks_for_holes";
	ASSERT_EQ(run("generate masks --count 4 -o " + data.string()).code, 0);
	const auto r = run("run holes -d " + data.string() + " -o " + (scratch() / "never.json").string());
	EXPECT_EQ(r.code, 1);
	EXPECT_FALSE(fs::exists(scratch() / "never.json"));
	EXPECT_NE(r.err.find("error"), std::string::npos);
}
