#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flag/io.hpp"
#include "oracles.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace flag;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() / ("flag_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

int run(const std::string& args, const fs::path& stdout_to = {})
{
    std::string cmd = std::string(FLAG_CLI_PATH) + " " + args;
    if (!stdout_to.empty()) cmd += " > " + stdout_to.string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<char> slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return std::vector<char>(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

nlohmann::json summary(const fs::path& p)
{
    std::ifstream in(p);
    nlohmann::json j;
    in >> j;
    return j;
}

} // namespace

TEST_CASE("admissibility command reports the residual and exits 0")
{
    TempDir tmp;
    const auto out = tmp.path / "s.json";
    CHECK(run("admissibility --L 64 --P 64 --lambda 2 --nu 2 --j0 2 --j0p 2", out) == 0);
    auto j = summary(out);
    CHECK(j.at("max_residual").get<double>() < 1e-10);

    // an impossible tolerance trips the numerical-validation exit code
    CHECK(run("admissibility --L 16 --P 16 --lambda 2 --nu 2 --j0 1 --j0p 1 --max-residual 0", out)
          == 4);
}

TEST_CASE("transform and inverse round-trip through files")
{
    TempDir tmp;
    // build a band-limited sample file: inverse of random coefficients
    BandLimit bl(12, 12, 0.9);
    auto grid = make_ball_grid(bl);
    oracle::Rng rng(10);
    FlagCoefficients c(bl);
    for (auto& v : c.values) v = rng.csym();
    auto samples = flag_inverse(c, grid);
    const auto sample_path = tmp.path / "samples.flag";
    write_samples(sample_path, bl, samples);
    const auto coeff_path = tmp.path / "coeffs.flag";
    const auto back_path = tmp.path / "back.flag";
    const auto out = tmp.path / "s.json";

    CHECK(run("transform --input " + sample_path.string() + " --output " + coeff_path.string(),
              out) == 0);
    CHECK(run("inverse --input " + coeff_path.string() + " --output " + back_path.string()
              + " --reference " + sample_path.string(), out) == 0);
    auto j = summary(out);
    CHECK(j.at("residual").get<double>() < 1e-10);

    // coefficients match the library transform bit-for-bit
    auto cli_coeffs = read_coefficients(coeff_path);
    auto lib_coeffs = flag_forward(samples, grid);
    CHECK(cli_coeffs.values == lib_coeffs.values);

    // JSON dump format
    const auto json_path = tmp.path / "coeffs.json";
    CHECK(run("transform --input " + sample_path.string() + " --output " + json_path.string()
              + " --format json", out) == 0);
    auto dumped = summary(json_path);
    CHECK(dumped.at("L") == 12);
    CHECK(dumped.at("values").size() == cli_coeffs.values.size());
}

TEST_CASE("wavelets then synthesize reconstructs the coefficients")
{
    TempDir tmp;
    BandLimit bl(16, 16, 1.0);
    oracle::Rng rng(4);
    FlagCoefficients c(bl);
    for (auto& v : c.values) v = rng.csym();
    const auto coeff_path = tmp.path / "c.flag";
    write_coefficients(coeff_path, c);
    const auto out = tmp.path / "s.json";

    CHECK(run("wavelets --input " + coeff_path.string() + " --output " + (tmp.path / "w").string()
              + " --lambda 2 --nu 2 --j0 1 --j0p 1", out) == 0);
    CHECK(run("synthesize --input " + (tmp.path / "w").string() + " --output "
              + (tmp.path / "rec.flag").string(), out) == 0);
    auto rec = read_coefficients(tmp.path / "rec.flag");
    double err = 0;
    for (std::size_t i = 0; i < c.values.size(); ++i)
        err = std::max(err, std::abs(rec.values[i] - c.values[i]));
    CHECK(err < 1e-10);
}

TEST_CASE("mock is deterministic per seed and feeds the voids command")
{
    TempDir tmp;
    const auto cat1 = tmp.path / "cat1.csv";
    const auto cat2 = tmp.path / "cat2.csv";
    const auto out = tmp.path / "s.json";
    const std::string mock_args =
        "mock --n 30000 --seed 7 --R 1 --void 0.5,1.5,2.0,0.2,1.0 --output ";
    CHECK(run(mock_args + cat1.string(), out) == 0);
    CHECK(run(mock_args + cat2.string(), out) == 0);
    CHECK(slurp(cat1) == slurp(cat2));

    CHECK(run("voids --input " + cat1.string()
              + " --L 16 --P 16 --R 1 --lambda 2 --nu 2 --j0 1 --j0p 1 --threshold 3.5"
              + " --output " + (tmp.path / "voids.json").string()
              + " --slice-pgm " + (tmp.path / "slice.pgm").string(), out) == 0);
    auto j = summary(out);
    CHECK(j.at("candidates").get<std::size_t>() >= 1);
    CHECK(fs::exists(tmp.path / "voids.json"));
    CHECK(fs::exists(tmp.path / "slice.pgm"));
}

TEST_CASE("bessel and render commands write their artifacts")
{
    TempDir tmp;
    BandLimit bl(6, 6, 1.0);
    oracle::Rng rng(2);
    FlagCoefficients c(bl);
    for (auto& v : c.values) v = rng.csym();
    const auto coeff_path = tmp.path / "c.flag";
    write_coefficients(coeff_path, c);
    const auto out = tmp.path / "s.json";

    CHECK(run("bessel --input " + coeff_path.string() + " --output "
              + (tmp.path / "fb.json").string() + " --kmin 0.2 --kmax 20 --nk 8", out) == 0);
    auto fb = read_bessel(tmp.path / "fb.json");
    CHECK(fb.k_grid.size() == 8);

    CHECK(run("render --L 16 --P 16 --R 1 --lambda 2 --nu 2 --j0 1 --j0p 1 --j 2 --jp 2 --s 0.4"
              " --output " + (tmp.path / "psi.flag").string()
              + " --pgm " + (tmp.path / "psi.pgm").string(), out) == 0);
    auto [rbl, rsamples] = read_samples(tmp.path / "psi.flag");
    CHECK(rbl.L == 16);
    CHECK(fs::exists(tmp.path / "psi.pgm"));
}

TEST_CASE("error exit codes")
{
    TempDir tmp;
    const auto out = tmp.path / "s.json";
    // unknown flag -> 2
    CHECK(run("transform --no-such-flag x 2> /dev/null", out) == 2);
    // missing input file -> 3
    CHECK(run("inverse --input " + (tmp.path / "missing.flag").string() + " --output "
              + (tmp.path / "o.flag").string() + " 2> /dev/null", out) == 3);
    // malformed input -> 3
    std::ofstream(tmp.path / "junk.flag") << "not a container";
    CHECK(run("inverse --input " + (tmp.path / "junk.flag").string() + " --output "
              + (tmp.path / "o.flag").string() + " 2> /dev/null", out) == 3);
    // invalid family parameters -> 2
    CHECK(run("admissibility --L 16 --P 16 --lambda 1.0 --nu 2 2> /dev/null", out) == 2);
}
