// SPDX-License-Identifier: Apache-2.0

#include "isac/report.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>
#include <string>

using namespace isac;

namespace {
std::vector<KpiColumn> all_bands() {
    return {{"FR1", builtin_config(Band::FR1)}, {"FR2", builtin_config(Band::FR2)}, {"FR3", builtin_config(Band::FR3)}};
}

int count_lines_starting(const std::string &text, const std::string &prefix) {
    std::istringstream in(text);
    int n = 0;
    for (std::string line; std::getline(in, line);) n += line.rfind(prefix, 0) == 0;
    return n;
}
} // namespace

TEST(KpiTable, MarkdownHasTwelveRows) {
    const std::string md = kpi_table(all_bands(), TableFormat::Markdown);
    // header + separator + 12 rows
    EXPECT_EQ(count_lines_starting(md, "|"), 14);
    EXPECT_NE(md.find("| FR1 | FR2 | FR3 |"), std::string::npos);
    EXPECT_NE(md.find("[1]"), std::string::npos);
    EXPECT_NE(md.find("0.1333*r"), std::string::npos);
}

TEST(KpiTable, CsvSingleBand) {
    const std::string csv = kpi_table({{"FR2", builtin_config(Band::FR2)}}, TableFormat::Csv);
    EXPECT_EQ(csv.rfind("parameter,unit,FR2\n", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 13);
    EXPECT_NE(csv.find("rho_h,m/m,0.03174603175"), std::string::npos);
}

TEST(KpiTable, CustomConfigHasNoFootnote) {
    auto cfg = builtin_config(Band::FR2);
    cfg.band = Band::Custom;
    const std::string md = kpi_table({{"mine", cfg}}, TableFormat::Markdown);
    EXPECT_EQ(md.find("[1]"), std::string::npos);
    const auto rows = kpi_rows({{"mine", cfg}});
    EXPECT_EQ(rows.size(), 12u);
    EXPECT_FALSE(rows[2].footnote);
}

TEST(KpiTable, JsonIsParseable) {
    const auto j = nlohmann::json::parse(kpi_table(all_bands(), TableFormat::Json));
    EXPECT_EQ(j["rows"].size(), 12u);
    EXPECT_EQ(j["columns"][1], "FR2");
    EXPECT_NEAR(j["rows"][10]["values"][0].get<double>(), 4996.54, 0.01);
}

TEST(KpiTable, ValuesAreComputed) {
    // A modified system changes the numbers: nothing comes from a stored table.
    auto cfg = builtin_config(Band::FR1);
    cfg.subcarrier_spacing_hz = 60e3;
    cfg.symbol_duration_s = 17.84e-6;
    cfg.nominal_bandwidth_hz.reset();
    const auto rows = kpi_rows({{"x", cfg}});
    EXPECT_NEAR(*rows[10].values[0], 299792458.0 / 120e3, 1e-9);
}

TEST(ReportText, MentionsBindingConstraint) {
    const std::string txt = format_text(evaluate(load_scenario("ghost-driver")));
    EXPECT_NE(txt.find("binding: resolution"), std::string::npos);
    EXPECT_NE(txt.find("r* = 157.5 m"), std::string::npos);
}
