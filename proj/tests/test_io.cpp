#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <doctest.h>

#include "bernbound/bounds.hpp"
#include "bernbound/ensembles.hpp"
#include "bernbound/io.hpp"

using namespace bernbound;

namespace {

double reparse(const std::string& text) {
    double out = 0.0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), out);
    REQUIRE(result.ec == std::errc{});
    return out;
}

}  // namespace

TEST_CASE("format_double round-trips exactly") {
    const std::vector<double> values = {0.0,        1.0,     0.1,           1.0 / 3.0,
                                        1e300,      5e-324,  -2.5e-17,      3.141592653589793,
                                        -0.0,       1e-12,   0.49999999999999994};
    for (double v : values) {
        CAPTURE(v);
        const std::string text = format_double(v);
        const double back = reparse(text);
        CHECK(std::signbit(back) == std::signbit(v));
        CHECK(back == v);
    }
}

TEST_CASE("format_double spells non-finite values plainly") {
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("format_double prefers the shortest representation") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("aux_to_json emits sorted keys and null for non-finite") {
    std::map<std::string, double> aux;
    aux["zeta"] = 1.5;
    aux["alpha"] = -2.0;
    CHECK(aux_to_json(aux) == "{\"alpha\":-2,\"zeta\":1.5}");
    aux["beta"] = std::numeric_limits<double>::infinity();
    CHECK(aux_to_json(aux) == "{\"alpha\":-2,\"beta\":null,\"zeta\":1.5}");
    CHECK(aux_to_json({}) == "{}");
}

TEST_CASE("load_ensemble_json accepts each ensemble shape") {
    const EnsembleVariant bern = load_ensemble_json("{\"bernoulli\": [0.2, 0.8]}");
    REQUIRE(std::holds_alternative<BernoulliEnsemble>(bern));
    CHECK(std::get<BernoulliEnsemble>(bern).probs()[1] == 0.8);

    const EnsembleVariant multi =
        load_ensemble_json("{\"multinoulli\": [[0.2, 0.3, 0.5], [0.1, 0.1, 0.8]]}");
    REQUIRE(std::holds_alternative<MultinoulliEnsemble>(multi));
    CHECK(std::get<MultinoulliEnsemble>(multi).category_count() == 3);

    const EnsembleVariant grouped = load_ensemble_json("{\"grouped\": [[0.1, 0.2], [0.5]]}");
    REQUIRE(std::holds_alternative<GroupedEnsemble>(grouped));
    CHECK(std::get<GroupedEnsemble>(grouped).group_count() == 2);
}

TEST_CASE("load_ensemble_json rejects malformed input") {
    CHECK_THROWS_AS(load_ensemble_json("not json"), std::invalid_argument);
    CHECK_THROWS_AS(load_ensemble_json("[0.5]"), std::invalid_argument);
    CHECK_THROWS_AS(load_ensemble_json("{}"), std::invalid_argument);
    CHECK_THROWS_AS(load_ensemble_json("{\"bernoulli\": [0.5], \"grouped\": [[0.5]]}"),
                    std::invalid_argument);
    CHECK_THROWS_AS(load_ensemble_json("{\"coins\": [0.5]}"), std::invalid_argument);
    CHECK_THROWS_AS(load_ensemble_json("{\"bernoulli\": 0.5}"), std::invalid_argument);
    CHECK_THROWS_AS(load_ensemble_json("{\"bernoulli\": [\"x\"]}"), std::invalid_argument);
    CHECK_THROWS_AS(load_ensemble_json("{\"bernoulli\": [1.5]}"), std::invalid_argument);
    CHECK_THROWS_AS(load_ensemble_json("{\"multinoulli\": [[0.5, 0.6]]}"), std::invalid_argument);
}

TEST_CASE("load_ensemble_file reports missing paths") {
    CHECK_THROWS_AS(load_ensemble_file("/nonexistent/ensemble.json"), std::invalid_argument);
}

TEST_CASE("load_ensemble_file reads what we write") {
    const std::string path = "/tmp/bernbound_io_test_ensemble.json";
    {
        std::FILE* f = std::fopen(path.c_str(), "w");
        REQUIRE(f != nullptr);
        std::fputs("{\"bernoulli\": [0.25, 0.75, 0.5]}\n", f);
        std::fclose(f);
    }
    const EnsembleVariant ens = load_ensemble_file(path);
    REQUIRE(std::holds_alternative<BernoulliEnsemble>(ens));
    CHECK(std::get<BernoulliEnsemble>(ens).size() == 3);
    std::remove(path.c_str());
}

TEST_CASE("reports_to_csv emits the documented header and stable fields") {
    const BernoulliEnsemble ens({0.5, 0.5});
    const std::vector<double> thresholds = {0.5};
    const std::vector<TailBoundReport> reports = compare(ens, thresholds);
    const std::string csv = reports_to_csv(reports);
    const CsvTable table = parse_csv(csv);
    REQUIRE(table.header ==
            std::vector<std::string>({"method", "n", "t", "epsilon", "bound", "log_bound",
                                      "trivial_flag", "aux_json"}));
    REQUIRE(table.rows.size() == reports.size());
    for (std::size_t i = 0; i < reports.size(); ++i) {
        CHECK(table.rows[i][0] == std::string(method_name(reports[i].method)));
        CHECK(reparse(table.rows[i][1]) == static_cast<double>(reports[i].n));
        CHECK(reparse(table.rows[i][2]) == reports[i].t);
        CHECK(reparse(table.rows[i][4]) == reports[i].bound);
        CHECK(reparse(table.rows[i][5]) == reports[i].log_bound);
        CHECK(table.rows[i][6] == (reports[i].trivial ? "1" : "0"));
        // Bernoulli methods carry no epsilon.
        CHECK(table.rows[i][3].empty());
        // aux_json contains commas, so it must have been quoted and reparsed.
        CHECK(table.rows[i][7].front() == '{');
    }
}

TEST_CASE("CSV writing is a fixed point of parse-then-write") {
    const BernoulliEnsemble ens({0.2, 0.8, 0.5});
    const std::vector<double> thresholds = {0.7, 1.4};
    std::vector<TailBoundReport> reports = compare(ens, thresholds);
    reports.push_back(multinoulli_bound(100, 3, 0.25));
    const std::string csv = reports_to_csv(reports);
    const CsvTable table = parse_csv(csv);
    CHECK(csv_to_string(table) == csv);
}

TEST_CASE("parse_csv handles quoting, CRLF, and embedded separators") {
    const std::string text = "a,b,c\r\n\"x,y\",\"he said \"\"hi\"\"\",plain\n1,\"line\nbreak\",2\n";
    const CsvTable table = parse_csv(text);
    REQUIRE(table.header == std::vector<std::string>({"a", "b", "c"}));
    REQUIRE(table.rows.size() == 2);
    CHECK(table.rows[0][0] == "x,y");
    CHECK(table.rows[0][1] == "he said \"hi\"");
    CHECK(table.rows[0][2] == "plain");
    CHECK(table.rows[1][1] == "line\nbreak");
    CHECK_THROWS_AS(parse_csv("a,b\n\"unterminated,1\n"), std::invalid_argument);
}

TEST_CASE("report_to_json carries every field") {
    const TailBoundReport report = new_tail_bound(100, 50.0);
    const std::string json = report_to_json(report);
    CHECK(json.find("\"method\":\"new\"") != std::string::npos);
    CHECK(json.find("\"n\":100") != std::string::npos);
    CHECK(json.find("\"t\":50") != std::string::npos);
    CHECK(json.find("\"bound\":" + format_double(report.bound)) != std::string::npos);
    CHECK(json.find("\"log_bound\":" + format_double(report.log_bound)) != std::string::npos);
    CHECK(json.find("\"trivial\":false") != std::string::npos);
    CHECK(json.find("\"epsilon\"") == std::string::npos);  // unset stays absent
    CHECK(json.find("\"lambda_star\"") != std::string::npos);

    const TailBoundReport multi = multinoulli_bound(100, 2, 0.5);
    const std::string multi_json = report_to_json(multi);
    CHECK(multi_json.find("\"epsilon\":0.5") != std::string::npos);
}
