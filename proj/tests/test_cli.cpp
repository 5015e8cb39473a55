#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/stat.h>
#include <sys/wait.h>

using std::string;

namespace {

string cli_path() {
    const char* env = std::getenv("COW_CLI");
    REQUIRE_MESSAGE(env != nullptr, "COW_CLI must point at the cow binary");
    return env;
}

string example_config() {
    const char* env = std::getenv("COW_EXAMPLE_CONFIG");
    REQUIRE_MESSAGE(env != nullptr, "COW_EXAMPLE_CONFIG must point at the sample config");
    return env;
}

int run(const string& args) {
    const string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

string slurp(const string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), ("missing file: " + path).c_str());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempDir {
    string path;
    TempDir() {
        char tmpl[] = "cow_cli_test_XXXXXX";
        REQUIRE(mkdtemp(tmpl) != nullptr);
        path = tmpl;
    }
    ~TempDir() {
        const int rc = std::system(("rm -rf " + path).c_str());
        (void)rc;
    }
};

}  // namespace

TEST_CASE("cli exit codes") {
    CHECK(run("") == 2);
    CHECK(run("--help") == 0);
    CHECK(run("--version") == 0);
    CHECK(run("no-such-command") == 2);
    CHECK(run("pcow-sweep -c " + example_config()) == 2);  // --values missing
}

TEST_CASE("validate-config") {
    CHECK(run("validate-config -c " + example_config()) == 0);
    CHECK(run("validate-config -c does_not_exist.json") == 2);
    CHECK(run("validate-config -c " + example_config() + " --set nope=1") == 2);
    CHECK(run("validate-config -c " + example_config() + " --set d2d_max=5") == 0);
    CHECK(run("validate-config -c " + example_config() + " --set d2d_max=9999") == 2);
}

TEST_CASE("pcow-sweep output") {
    TempDir dir;
    const string base = "pcow-sweep -c " + example_config() +
                        " --values 150,300 --trials 20 --seed 7 -o " + dir.path;
    REQUIRE(run(base) == 0);
    const string csv = slurp(dir.path + "/pcow_sweep.csv");
    CHECK(csv.rfind("sweep_var,p_cow_analytic_K,p_cow_analytic_pairs,"
                    "p_cow_montecarlo,mc_stderr\n", 0) == 0);
    // header + one row per sweep value
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    const string manifest = slurp(dir.path + "/run_manifest.json");
    CHECK(manifest.find("\"analytic_deviation_table\"") != string::npos);
    CHECK(manifest.find("\"config\"") != string::npos);

    SUBCASE("rerun is byte-identical") {
        TempDir dir2;
        const string again = "pcow-sweep -c " + example_config() +
                             " --values 150,300 --trials 20 --seed 7 -o " + dir2.path;
        REQUIRE(run(again) == 0);
        CHECK(slurp(dir2.path + "/pcow_sweep.csv") == csv);
    }
    SUBCASE("worker count does not change the bytes") {
        TempDir dir2;
        REQUIRE(run(base.substr(0, base.size() - dir.path.size()) + dir2.path +
                    " --workers 4") == 0);
        CHECK(slurp(dir2.path + "/pcow_sweep.csv") == csv);
    }
    SUBCASE("unsorted values are rejected") {
        CHECK(run("pcow-sweep -c " + example_config() +
                  " --values 300,150 --trials 5 -o " + dir.path) == 2);
    }
}

TEST_CASE("se-sweep and cu-count-sweep outputs") {
    TempDir dir;
    REQUIRE(run("se-sweep -c " + example_config() +
                " --values 150 --trials 10 --seed 3 -o " + dir.path) == 0);
    CHECK(slurp(dir.path + "/se_sweep.csv")
              .rfind("sweep_var,se_mode1,se_mode2,se_total,se_total_steered,"
                     "se_fixed_uca_baseline\n", 0) == 0);

    REQUIRE(run("cu-count-sweep -c " + example_config() +
                " --values 150 --trials 10 --seed 3 -o " + dir.path) == 0);
    CHECK(slurp(dir.path + "/cu_count_sweep.csv")
              .rfind("sweep_var,mean_selected_cu_count,p_cow_montecarlo,mc_stderr\n", 0) ==
          0);
}

TEST_CASE("demo output") {
    TempDir dir;
    REQUIRE(run("demo -c " + example_config() +
                " --set user_count=300 --seed 5 -o " + dir.path) == 0);
    const string csv = slurp(dir.path + "/demo_users.csv");
    CHECK(csv.rfind("r_meters,theta_radians,role\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 301);
    const string manifest = slurp(dir.path + "/run_manifest.json");
    CHECK(manifest.find("\"pair_found\"") != string::npos);

    SUBCASE("square region accepted, bogus region rejected") {
        CHECK(run("demo -c " + example_config() +
                  " --set user_count=100 --region square -o " + dir.path) == 0);
        CHECK(run("demo -c " + example_config() + " --region hexagon -o " + dir.path) == 2);
    }
}

TEST_CASE("beam-profile output") {
    TempDir dir;
    REQUIRE(run("beam-profile --mode 2 --waist 0.68 --wavelength 0.3 --z 50 --points 50 -o " +
                dir.path) == 0);
    const string csv = slurp(dir.path + "/beam_profile.csv");
    CHECK(csv.rfind("r_meters,intensity\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 52);
    CHECK(run("beam-profile --mode 0 -o " + dir.path) == 2);
}
