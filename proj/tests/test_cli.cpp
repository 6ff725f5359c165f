#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "soergel/jsonio.hpp"

namespace fs = std::filesystem;
using namespace soergel;

namespace {

const char* kCli = SOERGEL_CLI_PATH;

struct Workdir {
    fs::path dir;
    explicit Workdir(const std::string& name) : dir(fs::path(CLI_WORK_DIR) / name) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
};

int run(const std::string& args) {
    std::string cmd = std::string(kCli) + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

Json load(const fs::path& p) { return Json::parse(read_text_file(p.string())); }

} // namespace

TEST_CASE("klpoly command") {
    Workdir w("klpoly");
    CHECK(run("--preset A2 --out " + w.dir.string() + " klpoly") == 0);
    Json j = load(w.dir / "klpoly_A2.json");
    CHECK(j["schema_version"] == "charcalc/v1");
    CHECK(j["inversion_check"] == "pass");
    // all 19 Bruhat pairs, all P = 1
    CHECK(j["table"].size() == 19);
    for (const auto& e : j["table"]) {
        CHECK(e["P_q"]["coeffs"].size() == 1);
        CHECK(e["P_q"]["coeffs"][0] == "1");
    }
    // A3 contains the 1+q entry
    CHECK(run("--preset A3 --out " + w.dir.string() + " klpoly") == 0);
    Json j3 = load(w.dir / "klpoly_A3.json");
    bool found = false;
    for (const auto& e : j3["table"])
        if (e["x"] == "2" && e["w"] == "2.1.3.2") {
            found = true;
            CHECK(e["P_q"]["offset"] == 0);
            CHECK(e["P_q"]["coeffs"] == Json::array({"1", "1"}));
        }
    CHECK(found);
}

TEST_CASE("usage and config errors exit with 2") {
    Workdir w("errors");
    CHECK(run("klpoly") == 2);                                          // missing preset
    CHECK(run("--preset Z9 --out " + w.dir.string() + " klpoly") == 2); // bad preset
    CHECK(run("--preset G2 --prime 3 --out " + w.dir.string() + " pcan") == 2); // bad prime
    CHECK(run("--preset A2 --out " + w.dir.string() + " pcan") == 2);   // missing prime
    CHECK(run("--preset A2 --prime 3 --out " + w.dir.string() + " pcan") == 2); // lattice index
}

TEST_CASE("weyl cap exceeded exits with 2") {
    Workdir w("cap");
    CHECK(run("--preset A3 --max-weyl 10 --out " + w.dir.string() + " klpoly") == 2);
}

TEST_CASE("pcan over F5 matches the char-0 table for A2") {
    Workdir w("pcan");
    CHECK(run("--preset A2 --prime 5 --out " + w.dir.string() + " pcan") == 0);
    Json k = load(w.dir / "pcan_A2_K.json");
    Json f = load(w.dir / "pcan_A2_F5.json");
    CHECK(k["table"] == f["table"]);
    // h_{e,s} = v for A1
    CHECK(run("--preset A1 --prime 3 --ring F --out " + w.dir.string() + " pcan") == 0);
    Json a1 = load(w.dir / "pcan_A1_F3.json");
    bool found = false;
    for (const auto& e : a1["table"])
        if (e["x"] == "e" && e["w"] == "1") {
            found = true;
            CHECK(e["h"]["offset"] == 1);
            CHECK(e["h"]["coeffs"] == Json::array({"1"}));
        }
    CHECK(found);
}

TEST_CASE("mult command emits passing reports") {
    Workdir w("mult");
    CHECK(run("--preset B2 --prime 3 --ring F --out " + w.dir.string() + " mult") == 0);
    Json j = load(w.dir / "mult_B2_F3.json");
    for (const auto& [key, val] : j["checks"].items()) {
        INFO(key);
        CHECK(val.get<bool>());
    }
    // comp diagonal all 1
    int n = static_cast<int>(j["words"].size());
    for (int i = 0; i < n; ++i) CHECK(j["comp"][i][i] == 1);
}

TEST_CASE("decomp command and provenance flags") {
    Workdir w("decomp");
    CHECK(run("--preset A2 --prime 5 --out " + w.dir.string() + " decomp") == 0);
    Json j = load(w.dir / "decomp_A2_l5.json");
    CHECK(j["reduction_check"] == "pass");
    CHECK(j["provenance"].size() == 4);
    int n = static_cast<int>(j["words"].size());
    for (int i = 0; i < n; ++i) CHECK(j["e_matrix"][i][i] == 1);
}

TEST_CASE("cache: second run identical, corrupted cache rebuilt") {
    Workdir w("cache");
    std::string base = "--preset B2 --prime 3 --ring F --out " + w.dir.string() + " pcan";
    CHECK(run(base) == 0);
    std::string first = read_text_file((w.dir / "pcan_B2_F3.json").string());
    fs::path cachefile;
    for (const auto& e : fs::directory_iterator(w.dir / "cache")) cachefile = e.path();
    REQUIRE(!cachefile.empty());
    CHECK(run(base) == 0); // cached run
    CHECK(read_text_file((w.dir / "pcan_B2_F3.json").string()) == first);
    // corrupt the cache; the run must rebuild and still succeed
    std::ofstream(cachefile.string(), std::ios::trunc) << "{not json";
    CHECK(run(base) == 0);
    CHECK(read_text_file((w.dir / "pcan_B2_F3.json").string()) == first);
}

TEST_CASE("byte determinism across separate processes") {
    Workdir w1("det1"), w2("det2");
    std::string args = "--preset A2 --prime 5 --no-cache --out ";
    CHECK(run(args + w1.dir.string() + " mult") == 0);
    CHECK(run(args + w2.dir.string() + " mult") == 0);
    for (const char* f : {"pcan_A2_K.json", "pcan_A2_O5.json", "pcan_A2_F5.json", "mult_A2_K.json",
                          "mult_A2_O5.json", "mult_A2_F5.json", "pcan_A2_K.csv", "mult_A2_F5.csv"}) {
        CHECK(read_text_file((w1.dir / f).string()) == read_text_file((w2.dir / f).string()));
    }
}

TEST_CASE("config file mirrors flags") {
    Workdir w("cfg");
    std::ofstream cfg((w.dir / "job.cfg").string());
    cfg << "preset=A1\nprime=3\nring=F\nout=" << w.dir.string() << "\n";
    cfg.close();
    CHECK(run("--config " + (w.dir / "job.cfg").string() + " pcan") == 0);
    CHECK(fs::exists(w.dir / "pcan_A1_F3.json"));
}

TEST_CASE("golden files: emitted tables match the frozen schema") {
    Workdir w("golden");
    fs::path golden = fs::path(__FILE__).parent_path() / "golden";
    CHECK(run("--preset A1 --prime 3 --ring F --no-cache --out " + w.dir.string() + " pcan") == 0);
    CHECK(read_text_file((w.dir / "pcan_A1_F3.json").string()) ==
          read_text_file((golden / "pcan_A1_F3.json").string()));
    CHECK(read_text_file((w.dir / "pcan_A1_F3.csv").string()) ==
          read_text_file((golden / "pcan_A1_F3.csv").string()));
    CHECK(run("--preset A2 --prime 5 --ring F --no-cache --out " + w.dir.string() + " mult") == 0);
    CHECK(read_text_file((w.dir / "mult_A2_F5.json").string()) ==
          read_text_file((golden / "mult_A2_F5.json").string()));
}

TEST_CASE("selftest command: exit 0 and byte-identical reports") {
    Workdir w1("st1"), w2("st2");
    CHECK(run("--out " + w1.dir.string() + " selftest") == 0);
    CHECK(run("--out " + w2.dir.string() + " selftest") == 0);
    CHECK(read_text_file((w1.dir / "selftest_report.json").string()) ==
          read_text_file((w2.dir / "selftest_report.json").string()));
    Json j = load(w1.dir / "selftest_report.json");
    CHECK(j["all_pass"].get<bool>());
    CHECK(j["criteria"].size() == 10);
}
