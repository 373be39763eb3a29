#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptspeed/models.hpp"
#include "ptspeed/table.hpp"
#include "test_helpers.hpp"

using namespace ptspeed;

TEST_CASE("speed table rows satisfy the sample invariants") {
    const LindbladModel model = pt_model({2.0, 1.0});
    const SpeedTable table = build_speed_table(model, named_init("up_z"), 1.0, 0.1);

    REQUIRE(table.rows.size() == 11);
    CHECK(table.rows.front().t == 0.0);
    CHECK(testutil::close(table.rows.back().t, 1.0, 1e-12));
    CHECK(table.rows.front().v_r <= 1e-10);  // radial speed vanishes at t = 0 from up_z
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const SpeedRow& row = table.rows[i];
        if (i > 0) CHECK(row.t > table.rows[i - 1].t);
        CHECK(row.v >= 0.0);
        CHECK(row.v_r >= 0.0);
        CHECK(row.v_t >= 0.0);
        CHECK(row.v_r <= row.v + 1e-12);
        CHECK(testutil::close_rel(row.v * row.v, row.v_r * row.v_r + row.v_t * row.v_t, 1e-10));
        const double radius_sq = row.r_x * row.r_x + row.r_y * row.r_y + row.r_z * row.r_z;
        CHECK(testutil::close(row.purity, 0.5 + radius_sq, 1e-12));
    }

    LindbladModel three;
    three.n = 3;
    three.hamiltonian = ComplexMatrix::Identity(3, 3);
    CHECK_THROWS_AS((void)build_speed_table(three, RealVector::Zero(8), 1.0, 0.1),
                    DimensionMismatchError);
}

TEST_CASE("CSV output: pinned header, LF endings, round-trip precision, determinism") {
    const LindbladModel model = pt_model({1.0, 0.5});
    const SpeedTable table = build_speed_table(model, named_init("up_z"), 0.5, 0.05);

    std::ostringstream a, b;
    write_csv(a, table);
    write_csv(b, table);
    const std::string text = a.str();
    CHECK(text == b.str());
    CHECK(text.find('\r') == std::string::npos);
    CHECK(text.substr(0, text.find('\n')) == "t,v,v_R,v_T,r_x,r_y,r_z,purity");

    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    REQUIRE(lines.size() == table.rows.size() + 1);

    // 17 significant digits reparse to the exact doubles
    const std::string& row3 = lines[4];
    std::vector<double> parsed;
    std::size_t pos = 0;
    while (pos <= row3.size()) {
        const std::size_t comma = row3.find(',', pos);
        const std::string field = row3.substr(pos, comma - pos);
        parsed.push_back(std::strtod(field.c_str(), nullptr));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    REQUIRE(parsed.size() == 8);
    CHECK(parsed[0] == table.rows[3].t);
    CHECK(parsed[1] == table.rows[3].v);
    CHECK(parsed[2] == table.rows[3].v_r);
    CHECK(parsed[4] == table.rows[3].r_x);
    CHECK(parsed[7] == table.rows[3].purity);
}

TEST_CASE("JSON output parses back to the exact row values") {
    const LindbladModel model = pt_model({1.0, 2.0});
    const SpeedTable table = build_speed_table(model, named_init("plus_x"), 0.2, 0.05);

    std::ostringstream out;
    write_json(out, table);
    const auto parsed = nlohmann::json::parse(out.str());
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() == table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        CHECK(parsed[i]["t"].get<double>() == table.rows[i].t);
        CHECK(parsed[i]["v"].get<double>() == table.rows[i].v);
        CHECK(parsed[i]["v_R"].get<double>() == table.rows[i].v_r);
        CHECK(parsed[i]["v_T"].get<double>() == table.rows[i].v_t);
        CHECK(parsed[i]["purity"].get<double>() == table.rows[i].purity);
    }
}

TEST_CASE("local maxima detection is strict and jitter-resistant") {
    CHECK(local_maxima_indices({0.0, 1.0, 0.0, 2.0, 0.0}) ==
          std::vector<std::size_t>{1, 3});
    CHECK(local_maxima_indices({1.0, 2.0}).empty());

    // rounding-level jitter on a flat stretch must not register
    std::vector<double> flat(50, 1.0);
    for (std::size_t i = 1; i < flat.size(); i += 2) flat[i] += 1e-16;
    CHECK(local_maxima_indices(flat).empty());

    std::vector<double> ts, ys;
    for (int i = 0; i <= 1000; ++i) {
        ts.push_back(0.01 * i);
        ys.push_back(std::sin(0.01 * i));
    }
    const auto peaks = local_maxima_indices(ys);
    REQUIRE(peaks.size() == 2);  // pi/2 and pi/2 + 2 pi inside [0, 10]
    CHECK(testutil::close(refine_extremum(ts, ys, peaks[0]), M_PI / 2.0, 1e-6));
    CHECK(testutil::close(refine_extremum(ts, ys, peaks[1]), M_PI / 2.0 + 2.0 * M_PI, 1e-6));
}

TEST_CASE("extremum margin is relative to amplitude; minima mirror maxima") {
    // bumps of height 1e-7 on a unit-amplitude series: visible under the
    // default margin, suppressed once the margin exceeds their size
    std::vector<double> ys(101, 0.0);
    ys[0] = 1.0;
    for (std::size_t i = 10; i < ys.size(); i += 10) ys[i] = 1e-7;
    CHECK(local_maxima_indices(ys).size() == 9);
    CHECK(local_maxima_indices(ys, 1e-6).empty());

    CHECK(local_minima_indices({0.0, -1.0, 0.0, -2.0, 0.0}) ==
          std::vector<std::size_t>{1, 3});
    std::vector<double> dips(101, 1.0);
    for (std::size_t i = 10; i < dips.size(); i += 10) dips[i] = 1.0 - 1e-7;
    CHECK(local_minima_indices(dips).size() == 9);
    CHECK(local_minima_indices(dips, 1e-6).empty());
}

TEST_CASE("parabolic refinement recovers an exact vertex") {
    std::vector<double> ts, ys;
    for (int i = 0; i <= 20; ++i) {
        const double t = 0.3 + 0.05 * i;
        ts.push_back(t);
        ys.push_back(1.0 - (t - 0.87) * (t - 0.87));
    }
    const auto peaks = local_maxima_indices(ys);
    REQUIRE(peaks.size() == 1);
    CHECK(testutil::close(refine_extremum(ts, ys, peaks[0]), 0.87, 1e-12));

    CHECK(refine_extremum({0.0, 1.0, 2.0}, {5.0, 5.0, 5.0}, 1) == 1.0);  // flat: no shift
    CHECK_THROWS_AS((void)refine_extremum({0.0, 1.0}, {0.0, 1.0}, 0), ConfigError);
}

TEST_CASE("zero crossings: interpolated roots, exact zeros, no duplicates") {
    CHECK(zero_crossings({0.0, 1.0, 2.0, 3.0}, {-1.0, 1.0, 1.0, -2.0}) ==
          std::vector<double>{0.5, 2.0 + 1.0 / 3.0});
    CHECK(zero_crossings({0.0, 1.0, 2.0}, {-1.0, 0.0, 1.0}) == std::vector<double>{1.0});
    CHECK(zero_crossings({0.0, 1.0, 2.0}, {1.0, 0.0, 1.0}) == std::vector<double>{1.0});
    CHECK(zero_crossings({0.0, 1.0, 2.0}, {1.0, 2.0, 0.0}) == std::vector<double>{2.0});
    CHECK(zero_crossings({0.0, 1.0}, {1.0, 2.0}).empty());
    CHECK_THROWS_AS((void)zero_crossings({0.0}, {1.0, 2.0}), LengthMismatchError);
}

TEST_CASE("unbroken-phase radial speed oscillates with the closed-form period") {
    const double g = 2.0, gamma = 1.0;
    const SpeedTable table = build_speed_table(pt_model({g, gamma}), named_init("up_z"), 8.0, 2e-3);

    std::vector<double> ts, vr;
    for (const SpeedRow& row : table.rows) {
        ts.push_back(row.t);
        vr.push_back(row.v_r);
    }
    const auto peaks = local_maxima_indices(vr);
    REQUIRE(peaks.size() >= 3);
    const double period = M_PI / std::sqrt(g * g - gamma * gamma);
    for (std::size_t k = 1; k < peaks.size(); ++k) {
        const double gap = refine_extremum(ts, vr, peaks[k]) - refine_extremum(ts, vr, peaks[k - 1]);
        CHECK(std::abs(gap - period) <= 0.02 * period);
    }
}
