#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using std::filesystem::path;

namespace {

std::string cli_binary() {
    const char* bin = std::getenv("DELAYCTL_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "DELAYCTL_BIN must point at the CLI binary");
    return bin;
}

struct Sandbox {
    path dir;
    Sandbox() {
        dir = std::filesystem::temp_directory_path() /
              ("delayctl_cli_" + std::to_string(::getpid()));
        std::filesystem::create_directories(dir);
    }
    ~Sandbox() { std::filesystem::remove_all(dir); }

    std::string write(const std::string& name, const std::string& text) const {
        const path p = dir / name;
        std::ofstream out(p);
        out << text;
        return p.string();
    }

    int run(const std::string& args) const {
        const std::string cmd = cli_binary() + std::string(" ") + args + " >" +
                                (dir / "stdout.txt").string() + " 2>" +
                                (dir / "stderr.txt").string();
        const int status = std::system(cmd.c_str());
        return WEXITSTATUS(status);
    }

    std::string slurp(const std::string& name) const {
        std::ifstream in(dir / name);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    int line_count(const std::string& name) const {
        std::ifstream in(dir / name);
        int n = 0;
        std::string line;
        while (std::getline(in, line)) ++n;
        return n;
    }
};

const char* kModelConfig = R"([kernel]
kind = zero

[horizon]
T = 1.5

[grids]
state_panels = 2048
control_panels = 512
sim_steps_per_unit = 2048
oracle_steps_per_unit = 128
oracle_points = 500

[output]
prefix = run

[initial]
kind = eigenvector
branch = 1
)";

}  // namespace

TEST_CASE("spectrum command writes roots with tiny residuals") {
    Sandbox sb;
    const std::string cfg = sb.write("model.ini", kModelConfig);
    const int rc = sb.run("spectrum --config " + cfg + " --out " + sb.dir.string() +
                          " --branches -10:10");
    CHECK(rc == 0);
    CHECK(sb.line_count("run_spectrum.csv") == 22);  // header + 21 roots
    std::ifstream res(sb.dir / "run_residuals.csv");
    std::string line;
    std::getline(res, line);
    int rows = 0;
    while (std::getline(res, line)) {
        const double value = std::stod(line.substr(line.find(',') + 1));
        CHECK(value < 1e-11);
        ++rows;
    }
    CHECK(rows == 21);
}

TEST_CASE("empty branch range produces header-only files") {
    Sandbox sb;
    const std::string cfg = sb.write("model.ini", kModelConfig);
    const int rc = sb.run("spectrum --config " + cfg + " --out " + sb.dir.string() +
                          " --branches 5:4");
    CHECK(rc == 0);
    CHECK(sb.line_count("run_spectrum.csv") == 1);
}

TEST_CASE("missing kernel file exits with the config code and names the path") {
    Sandbox sb;
    const std::string cfg = sb.write("bad.ini",
                                     "[kernel]\nkind = sampled\nphi_file = /no/such/phi.csv\n");
    const int rc = sb.run("spectrum --config " + cfg + " --out " + sb.dir.string());
    CHECK(rc == 2);
    CHECK(sb.slurp("stderr.txt").find("/no/such/phi.csv") != std::string::npos);
}

TEST_CASE("bad horizon exits with the config code") {
    Sandbox sb;
    const std::string cfg = sb.write("bad.ini", "[kernel]\nkind = zero\n[horizon]\nT = 2.5\n");
    const int rc = sb.run("synthesize --config " + cfg + " --out " + sb.dir.string());
    CHECK(rc == 2);
}

TEST_CASE("synthesize is deterministic and verify reports a null control") {
    Sandbox sb;
    const std::string cfg = sb.write("model.ini", kModelConfig);

    REQUIRE(sb.run("synthesize --config " + cfg + " --out " + sb.dir.string() + " --n-list 2") == 0);
    const std::string first = sb.slurp("run_control.csv");
    const std::string meta = sb.slurp("run_control.meta");
    REQUIRE(sb.run("synthesize --config " + cfg + " --out " + sb.dir.string() + " --n-list 2") == 0);
    CHECK(first == sb.slurp("run_control.csv"));
    CHECK(meta == sb.slurp("run_control.meta"));
    CHECK(meta.find("convention") != std::string::npos);
    CHECK(meta.find("kappa_1") != std::string::npos);

    REQUIRE(sb.run("verify --config " + cfg + " --out " + sb.dir.string() + " --grid 3072") == 0);
    const std::string verify = sb.slurp("run_verify.csv");
    const auto pos = verify.find("ratio,");
    REQUIRE(pos != std::string::npos);
    const double ratio = std::stod(verify.substr(pos + 6));
    CHECK(ratio < 1e-4);
}

TEST_CASE("reconstruct emits the error table") {
    Sandbox sb;
    std::string cfg_text = kModelConfig;
    cfg_text.replace(cfg_text.find("kind = eigenvector\nbranch = 1"),
                     std::string("kind = eigenvector\nbranch = 1").size(), "kind = ones");
    const std::string cfg = sb.write("model.ini", cfg_text);
    REQUIRE(sb.run("reconstruct --config " + cfg + " --out " + sb.dir.string() + " --n-list 2,3") == 0);
    CHECK(sb.line_count("run_reconstruct.csv") == 3);
    CHECK(sb.slurp("run_reconstruct.csv").rfind("n,m_norm_error", 0) == 0);
}

TEST_CASE("compare emits the gap report") {
    Sandbox sb;
    const std::string cfg = sb.write("model.ini", kModelConfig);
    REQUIRE(sb.run("compare --config " + cfg + " --out " + sb.dir.string() + " --n-list 2") == 0);
    const std::string report = sb.slurp("run_gap.csv");
    CHECK(report.rfind("n,norm_spectral,norm_oracle,gap_l2", 0) == 0);
    CHECK(sb.line_count("run_gap.csv") == 2);
}
