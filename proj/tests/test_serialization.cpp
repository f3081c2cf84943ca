#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "annulus_lab/parallel.hpp"
#include "annulus_lab/serialization.hpp"
#include "annulus_lab/verify.hpp"
#include "json.hpp"

using namespace annulus_lab;
using nlohmann::json;

namespace {

const CriticalAnnulus& sphere_annulus() {
    static const CriticalAnnulus c = solve_annulus({SpaceFormSign::spherical, -0.5});
    return c;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

// Object keys at every level appear in ascending order in the text.
bool keys_sorted(const json& j) {
    if (j.is_object()) {
        std::string prev;
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first && !(prev < it.key())) return false;
            prev = it.key();
            first = false;
            if (!keys_sorted(it.value())) return false;
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (!keys_sorted(v)) return false;
        }
    }
    return true;
}

} // namespace

TEST(FormatDouble, SeventeenDigitsRoundTrip) {
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(1.0), "1");
    for (double v : {1.0 / 3.0, -2.718281828459045, 6.02214076e23, 1e-300}) {
        EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
    }
}

TEST(Csv, HeaderAndRows) {
    CsvTable t({"a", "b"});
    t.add_row({"1", "2"});
    EXPECT_EQ(t.str(), "a,b\n1,2\n");
    EXPECT_THROW(t.add_row({"1"}), ConfigurationError);
}

TEST(Csv, SpectrumTableColumns) {
    const auto table = spectrum(sphere_annulus(), 3);
    const auto rows = lines_of(spectrum_csv(table));
    EXPECT_EQ(rows.front(), "index,sigma,m,parity,multiplicity,a_parity");
    EXPECT_EQ(rows.size(), 1u + 2u * 4u);
    EXPECT_EQ(rows[1].substr(0, 2), "0,");
    EXPECT_NE(rows[1].find(",0,even,1,A_even"), std::string::npos);
    int total = 0;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        std::istringstream in(rows[k]);
        std::vector<std::string> parts;
        for (std::string cell; std::getline(in, cell, ',');) parts.push_back(cell);
        ASSERT_EQ(parts.size(), 6u);
        EXPECT_EQ(std::stoi(parts[0]), total);
        total += std::stoi(parts[4]);
    }
    EXPECT_EQ(total, 2 * (1 + 2 * 3));
}

TEST(Json, ConfigHasSortedKeys) {
    const auto text = config_json(sphere_annulus().config());
    const auto j = json::parse(text);
    EXPECT_TRUE(keys_sorted(j));
    EXPECT_EQ(j["epsilon"], 1);
    EXPECT_DOUBLE_EQ(j["s0"].get<double>(), sphere_annulus().s0());
    EXPECT_LT(text.find("\"a\""), text.find("\"epsilon\""));
    EXPECT_EQ(text.back(), '\n');
    EXPECT_EQ(canonical_json(text), text);
}

TEST(Json, CanonicalSortsAndRejectsGarbage) {
    EXPECT_EQ(canonical_json("{\"b\": 1, \"a\": {\"d\": 2, \"c\": 3}}"),
              "{\n  \"a\": {\n    \"c\": 3,\n    \"d\": 2\n  },\n  \"b\": 1\n}\n");
    EXPECT_THROW(canonical_json("{oops"), IoError);
}

TEST(Json, VerifyReportPassesForSolvedConfig) {
    const auto checks = run_verification(sphere_annulus());
    for (const auto& c : checks) EXPECT_TRUE(c.passed) << c.name << " = " << c.value;
    const auto j = json::parse(verify_json(sphere_annulus().config(), checks));
    EXPECT_TRUE(j["all_passed"].get<bool>());
    EXPECT_TRUE(keys_sorted(j));
}

TEST(Json, VerifyReportFailsWhenBoundaryMoved) {
    const auto checks = run_verification(sphere_annulus(), {}, 0.1);
    bool any_failed = false;
    for (const auto& c : checks) any_failed |= !c.passed;
    EXPECT_TRUE(any_failed);
}

TEST(Mesh, ShapeAndByteIdenticalRoundTrip) {
    const auto text = mesh_json(sphere_annulus(), 9, 8);
    const auto j = json::parse(text);
    EXPECT_EQ(j["vertices"].size(), 72u);
    EXPECT_EQ(j["faces"].size(), 2u * 8u * 8u);
    for (const auto& v : j["vertices"]) {
        const AmbientVector p{v[0].get<double>(), {v[1].get<double>(), v[2].get<double>(), v[3].get<double>()}};
        EXPECT_LT(constraint_residual(SpaceFormSign::spherical, p), 1e-10);
    }
    EXPECT_EQ(canonical_json(text), text);
    EXPECT_EQ(mesh_json(sphere_annulus(), 9, 8), text);
    EXPECT_THROW(mesh_json(sphere_annulus(), 1, 8), ConfigurationError);
}

TEST(Files, WriteAndFailure) {
    const auto path = std::filesystem::temp_directory_path() / "annulus_lab_write_test.txt";
    write_text_file(path.string(), "hello\n");
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "hello");
    std::filesystem::remove(path);
    EXPECT_THROW(write_text_file("/nonexistent-dir/x/y.txt", "z"), IoError);
}

TEST(Parallel, CoversRangeAndPropagatesErrors) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i].fetch_add(1); });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
    EXPECT_THROW(parallel_for(50, [](std::size_t i) {
                     if (i == 17) throw NumericError("boom");
                 }),
                 NumericError);
    parallel_for(0, [](std::size_t) { FAIL(); });
}

TEST(Parallel, ThreadLimitFromEnvironment) {
    ::setenv("ANNULUS_LAB_THREADS", "3", 1);
    EXPECT_EQ(thread_limit(), 3u);
    ::setenv("ANNULUS_LAB_THREADS", "0", 1);
    EXPECT_GE(thread_limit(), 1u);
    ::setenv("ANNULUS_LAB_THREADS", "junk", 1);
    EXPECT_GE(thread_limit(), 1u);
    ::unsetenv("ANNULUS_LAB_THREADS");
    EXPECT_GE(thread_limit(), 1u);
}

TEST(Parallel, ResultsIndependentOfThreadCount) {
    ::setenv("ANNULUS_LAB_THREADS", "1", 1);
    const auto one = spectrum_csv(spectrum(sphere_annulus(), 4));
    ::setenv("ANNULUS_LAB_THREADS", "4", 1);
    const auto four = spectrum_csv(spectrum(sphere_annulus(), 4));
    ::unsetenv("ANNULUS_LAB_THREADS");
    EXPECT_EQ(one, four);
}
