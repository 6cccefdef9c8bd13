// End-to-end checks of the finfo binary. The test runner passes the binary's
// location through the FINFO_CLI_BIN environment variable.

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "finfo/io.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    const char* p = std::getenv("FINFO_CLI_BIN");
    REQUIRE(p != nullptr);
    return p;
}

fs::path work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("finfo_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

/// Runs the CLI with the given arguments; returns the exit code and fills
/// `stdout_text` from a redirect file.
int run_cli(const std::string& args, std::string* stdout_text = nullptr) {
    const fs::path out = work_dir() / "stdout.txt";
    const std::string cmd =
        cli_path() + " " + args + " > " + out.string() + " 2> " + (work_dir() / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    if (stdout_text) {
        std::ifstream in(out);
        std::ostringstream buf;
        buf << in.rdbuf();
        *stdout_text = buf.str();
    }
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

fs::path sample_prices(std::size_t n, const std::string& name) {
    // Deterministic, strictly positive prices with some texture.
    std::ostringstream csv;
    csv << "date,price\n";
    double level = 100.0;
    for (std::size_t i = 0; i < n; ++i) {
        level *= 1.0 + 0.01 * (static_cast<int>(i * 7919 % 13) - 6) / 6.0;
        char ts[16];
        std::snprintf(ts, sizeof(ts), "d%08zu", i);
        csv << ts << ',' << finfo::io::format_value(level) << '\n';
    }
    const fs::path p = work_dir() / name;
    write_file(p, csv.str());
    return p;
}

} // namespace

TEST_CASE("var subcommand reproduces the stress multiplier") {
    std::string out;
    REQUIRE(run_cli("var --kl 0.91 --mu 0.28 --sigma 0.18", &out) == 0);
    CHECK(out == "4.5\n");
}

TEST_CASE("var subcommand validates its baseline") {
    std::string out;
    CHECK(run_cli("var --kl 0.91 --mu 0.28 --sigma 0", &out) == 3);
}

TEST_CASE("repeated runs with one seed are byte-identical") {
    const fs::path a = work_dir() / "synth_a.csv";
    const fs::path b = work_dir() / "synth_b.csv";
    REQUIRE(run_cli("synth --kind ar1 --phi 0.8 --n 400 --seed 9 -o " + a.string()) == 0);
    REQUIRE(run_cli("synth --kind ar1 --phi 0.8 --n 400 --seed 9 -o " + b.string()) == 0);
    CHECK(read_file(a) == read_file(b));

    const fs::path ea = work_dir() / "ent_a.csv";
    const fs::path eb = work_dir() / "ent_b.csv";
    const std::string args = "entropy --returns-input --window 120 --seed 5 -i " + a.string();
    REQUIRE(run_cli(args + " -o " + ea.string()) == 0);
    REQUIRE(run_cli(args + " -o " + eb.string()) == 0);
    CHECK(read_file(ea) == read_file(eb));

    // A different seed must change the synthetic draw.
    const fs::path c = work_dir() / "synth_c.csv";
    REQUIRE(run_cli("synth --kind ar1 --phi 0.8 --n 400 --seed 10 -o " + c.string()) == 0);
    CHECK(read_file(a) != read_file(c));
}

TEST_CASE("emitted series re-ingest to identical bytes") {
    const fs::path src = work_dir() / "roundtrip_src.csv";
    REQUIRE(run_cli("synth --kind iid_gaussian --n 300 --seed 4 -o " + src.string()) == 0);
    const auto series = finfo::io::load_series(src.string());
    // Re-emitting what we loaded must reproduce the file byte for byte.
    finfo::TimedSeries echoed{series.timestamps, series.values};
    const fs::path dst = work_dir() / "roundtrip_dst.csv";
    finfo::io::write_table_file(finfo::io::table_from_series(echoed), dst.string(), false);
    CHECK(read_file(src) == read_file(dst));
}

TEST_CASE("entropy defaults to a 252-observation window") {
    const auto prices = sample_prices(302, "prices_default.csv");
    std::string out;
    REQUIRE(run_cli("entropy -i " + prices.string(), &out) == 0);
    // 301 returns -> 301 - 252 + 1 = 50 rows plus the header.
    std::size_t lines = 0;
    for (char ch : out) lines += ch == '\n';
    CHECK(lines == 51);
    CHECK(out.rfind("timestamp,value\n", 0) == 0);
}

TEST_CASE("kl subcommand emits regime columns") {
    const auto prices = sample_prices(200, "prices_kl.csv");
    std::string out;
    REQUIRE(run_cli("kl --window 40 -i " + prices.string(), &out) == 0);
    CHECK(out.rfind("timestamp,value,z_score,flag\n", 0) == 0);
}

TEST_CASE("plot-data emits the tidy long format") {
    const auto prices = sample_prices(200, "prices_long.csv");
    std::string out;
    REQUIRE(run_cli("kl --window 40 --plot-data -i " + prices.string(), &out) == 0);
    CHECK(out.rfind("timestamp,series,value\n", 0) == 0);
    CHECK(out.find(",z_score,") != std::string::npos);
}

TEST_CASE("insufficient history exits with code 4") {
    const auto prices = sample_prices(60, "prices_short.csv");
    CHECK(run_cli("entropy -i " + prices.string()) == 4); // default window 252
    CHECK(run_cli("kl --window 40 -i " + prices.string()) == 4); // needs two windows
}

TEST_CASE("ingestion failures exit with code 5") {
    CHECK(run_cli("entropy -i " + (work_dir() / "missing.csv").string()) == 5);

    const fs::path bad = work_dir() / "bad_price.csv";
    write_file(bad, "date,price\nd0,100\nd1,not_a_number\n");
    CHECK(run_cli("entropy -i " + bad.string()) == 5);

    const fs::path dup = work_dir() / "dup_dates.csv";
    write_file(dup, "date,price\nd0,100\nd0,101\n");
    CHECK(run_cli("entropy -i " + dup.string()) == 5);

    const fs::path unsorted = work_dir() / "unsorted.csv";
    write_file(unsorted, "date,price\nd1,100\nd0,101\nd2,99\n");
    CHECK(run_cli("entropy --strict -i " + unsorted.string()) == 5);
}

TEST_CASE("pair generators need a second output") {
    const fs::path x = work_dir() / "pair_x.csv";
    const fs::path y = work_dir() / "pair_y.csv";
    CHECK(run_cli("synth --kind coupled_lag_pair --coupling 0.8 --n 100 -o " + x.string()) == 3);
    REQUIRE(run_cli("synth --kind coupled_lag_pair --coupling 0.8 --n 100 -o " + x.string() +
                    " --output2 " + y.string()) == 0);
    const auto sx = finfo::io::load_series(x.string());
    const auto sy = finfo::io::load_series(y.string());
    CHECK(sx.size() == 100);
    CHECK(sy.size() == 100);
    CHECK(sx.timestamps == sy.timestamps);
    CHECK(run_cli("synth --kind no_such_kind --n 100") == 3);
}

TEST_CASE("transfer entropy runs on a generated pair") {
    const fs::path x = work_dir() / "te_x.csv";
    const fs::path y = work_dir() / "te_y.csv";
    REQUIRE(run_cli("synth --kind coupled_lag_pair --coupling 0.8 --n 260 --seed 2 -o " +
                    x.string() + " --output2 " + y.string()) == 0);
    std::string out;
    REQUIRE(run_cli("te --returns-input --window 200 -i " + x.string() + " --target " +
                        y.string(),
                    &out) == 0);
    CHECK(out.rfind("timestamp,value\n", 0) == 0);
    CHECK(out.find('\n') != std::string::npos);
}

TEST_CASE("diversify reports weights and the objective") {
    // Build a small two-asset panel from two synthetic draws.
    const fs::path x = work_dir() / "div_x.csv";
    const fs::path y = work_dir() / "div_y.csv";
    REQUIRE(run_cli("synth --kind correlated_gaussian_pair --rho -0.5 --n 400 -o " + x.string() +
                    " --output2 " + y.string()) == 0);
    const auto sx = finfo::io::load_series(x.string());
    const auto sy = finfo::io::load_series(y.string());
    std::ostringstream panel;
    panel << "date,alpha,beta\n";
    for (std::size_t i = 0; i < sx.size(); ++i) {
        panel << sx.timestamps[i] << ',' << finfo::io::format_value(sx.values[i]) << ','
              << finfo::io::format_value(sy.values[i]) << '\n';
    }
    const fs::path panel_path = work_dir() / "panel.csv";
    write_file(panel_path, panel.str());

    std::string out;
    REQUIRE(run_cli("diversify --budget 40 --sense maximize -i " + panel_path.string(), &out) ==
            0);
    CHECK(out.find("alpha,") != std::string::npos);
    CHECK(out.find("beta,") != std::string::npos);
    CHECK(out.find("objective,") != std::string::npos);
}

TEST_CASE("backtest consumes signals and reports a summary") {
    const auto prices = sample_prices(50, "prices_bt.csv");
    std::ostringstream sig;
    sig << "timestamp,signal\n";
    for (std::size_t i = 1; i < 50; ++i) {
        char ts[16];
        std::snprintf(ts, sizeof(ts), "d%08zu", i);
        sig << ts << ',' << (i % 3 == 0 ? "-1" : "1") << '\n';
    }
    const fs::path sig_path = work_dir() / "signals.csv";
    write_file(sig_path, sig.str());

    std::string out;
    REQUIRE(run_cli("backtest -i " + prices.string() + " --signals " + sig_path.string(), &out) ==
            0);
    CHECK(out.find("total_log_return,") != std::string::npos);
    CHECK(out.find("hit_rate,") != std::string::npos);
    CHECK(out.find("exposure,") != std::string::npos);

    // A signal at an unknown timestamp is an alignment failure.
    const fs::path bad = work_dir() / "signals_bad.csv";
    write_file(bad, "timestamp,signal\nzzz,1\n");
    CHECK(run_cli("backtest -i " + prices.string() + " --signals " + bad.string()) == 6);
}

TEST_CASE("signals subcommand emits a gated signal column") {
    const auto prices = sample_prices(400, "prices_sig.csv");
    std::string out;
    REQUIRE(run_cli("signals --window 120 -i " + prices.string(), &out) == 0);
    CHECK(out.rfind("timestamp,signal\n", 0) == 0);
    std::istringstream lines(out);
    std::string line;
    std::getline(lines, line); // header
    while (std::getline(lines, line)) {
        const auto comma = line.find(',');
        REQUIRE(comma != std::string::npos);
        const std::string v = line.substr(comma + 1);
        CHECK((v == "-1" || v == "0" || v == "1"));
    }
}
