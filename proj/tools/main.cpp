// Command line front end: configuration, orchestration, caching and table
// emission. Exit codes: 0 success, 1 invariant failure, 2 configuration
// error.

#include <CLI11.hpp>

#include <fcntl.h>
#include <unistd.h>

#include <filesystem>
#include <iostream>
#include <thread>

#include "soergel/selftest.hpp"

namespace fs = std::filesystem;
using namespace soergel;

namespace {

struct JobConfig {
    std::string preset;
    std::vector<long> primes;
    std::vector<std::string> rings{"K", "O", "F"};
    std::string out_dir = "out";
    bool no_cache = false;
    int budget_peel = 4096;
    int max_weyl = kDefaultWeylCap;
};

// advisory file lock guarding the cache directory writes
class FileLock {
  public:
    explicit FileLock(const std::string& path) : path_(path) {
        for (int tries = 0; tries < 600; ++tries) {
            fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
            if (fd_ >= 0) return;
            std::this_thread::sleep_for(std::chrono::milliseconds(100));
        }
        throw config_error("could not acquire cache lock " + path_);
    }
    ~FileLock() {
        if (fd_ >= 0) {
            ::close(fd_);
            ::unlink(path_.c_str());
        }
    }

  private:
    std::string path_;
    int fd_ = -1;
};

std::string ring_file_tag(const CoefRing& r) {
    if (r.kind == RingKind::Rationals) return "K";
    return r.tag() + std::to_string(r.ell);
}

fs::path cache_file(const JobConfig& cfg, const CoefRing& ring) {
    std::string name = cfg.preset + "_" + ring_file_tag(ring) + "_v" + kEngineVersion + ".json";
    return fs::path(cfg.out_dir) / "cache" / name;
}

// Build (or load from cache) the indecomposable library for one ring.
IndecTable load_or_build(const JobConfig& cfg, const Coinvariants& coinv) {
    fs::path file = cache_file(cfg, coinv.ring());
    if (!cfg.no_cache && fs::exists(file)) {
        try {
            Json j = Json::parse(read_text_file(file.string()));
            CachedLibrary lib = indec_table_from_json(j, coinv.group());
            require(lib.ring == coinv.ring(), "cache ring mismatch");
            IndecTable t = IndecTable::from_parts(coinv, std::move(lib.modules),
                                                  std::move(lib.characters), std::move(lib.homs));
            std::cerr << "loaded cache " << file.string() << "\n";
            return t;
        } catch (const std::exception& e) {
            std::cerr << "cache " << file.string() << " rejected (" << e.what() << "), rebuilding\n";
        }
    }
    BuildOptions opts;
    opts.peel_budget = cfg.budget_peel;
    IndecTable t = IndecTable::build(coinv, opts);
    if (!cfg.no_cache) {
        fs::create_directories(file.parent_path());
        FileLock lock(file.string() + ".lock");
        write_text_file(file.string(), indec_table_to_json(t).dump(1));
    }
    return t;
}

void emit(const JobConfig& cfg, const std::string& name, const Json& j, const std::string& csv) {
    fs::create_directories(cfg.out_dir);
    write_text_file((fs::path(cfg.out_dir) / (name + ".json")).string(), j.dump(1));
    write_text_file((fs::path(cfg.out_dir) / (name + ".csv")).string(), csv);
    std::cout << "wrote " << (fs::path(cfg.out_dir) / name).string() << ".{json,csv}\n";
}

void validate(const JobConfig& cfg, bool needs_primes) {
    if (cfg.preset.empty()) throw config_error("--preset is required");
    RootDatum d = build_root_datum(cfg.preset);
    if (needs_primes) {
        if (cfg.primes.empty()) throw config_error("at least one --prime is required");
        for (long ell : cfg.primes) {
            if (ell < 2) throw config_error("primes must be >= 2");
            if (!d.is_good_prime(ell))
                throw config_error("prime " + std::to_string(ell) + " is bad for " + cfg.preset);
            if (!d.coinvariant_prime_ok(ell))
                throw config_error("prime " + std::to_string(ell) + " divides the lattice index of " +
                                   cfg.preset + "; use the GL preset in this characteristic");
        }
    }
    for (const auto& r : cfg.rings)
        if (r != "K" && r != "O" && r != "F") throw config_error("--ring must be K, O or F");
}

int cmd_klpoly(const JobConfig& cfg) {
    validate(cfg, false);
    WeylGroup g(build_root_datum(cfg.preset), cfg.max_weyl);
    KLTable t = kl_basis(g);
    InversionReport rep = kl_inversion_check(g, t);
    emit(cfg, "klpoly_" + cfg.preset, klpoly_to_json(g, t, rep), klpoly_to_csv(g, t));
    return rep.pass ? 0 : 1;
}

int cmd_pcan(const JobConfig& cfg, bool with_mult) {
    validate(cfg, true);
    WeylGroup g(build_root_datum(cfg.preset), cfg.max_weyl);
    bool all_ok = true;
    auto run_ring = [&](CoefRing ring) {
        Coinvariants coinv = Coinvariants::build(g, ring);
        IndecTable lib = load_or_build(cfg, coinv);
        CharCalc cc(lib);
        std::vector<std::string> notes;
        bool ok = cc.run_all_checks(&notes);
        all_ok = all_ok && ok;
        std::string tag = ring_file_tag(ring);
        emit(cfg, "pcan_" + cfg.preset + "_" + tag, stalks_to_json(cc, cfg.preset), stalks_to_csv(cc));
        if (with_mult)
            emit(cfg, "mult_" + cfg.preset + "_" + tag, mult_to_json(cc, cfg.preset), mult_to_csv(cc));
        for (const auto& s : notes) std::cerr << "check failure: " << s << "\n";
    };
    bool want_k = false, want_o = false, want_f = false;
    for (const auto& r : cfg.rings) {
        want_k |= (r == "K");
        want_o |= (r == "O");
        want_f |= (r == "F");
    }
    if (want_k) run_ring(rationals());
    for (long ell : cfg.primes) {
        if (want_o) run_ring(local_integers(ell));
        if (want_f) run_ring(prime_field(ell));
    }
    return all_ok ? 0 : 1;
}

int cmd_decomp(const JobConfig& cfg) {
    validate(cfg, true);
    WeylGroup g(build_root_datum(cfg.preset), cfg.max_weyl);
    bool all_ok = true;
    Coinvariants ck = Coinvariants::build(g, rationals());
    IndecTable tk = load_or_build(cfg, ck);
    for (long ell : cfg.primes) {
        Coinvariants co = Coinvariants::build(g, local_integers(ell));
        Coinvariants cf = Coinvariants::build(g, prime_field(ell));
        IndecTable to = load_or_build(cfg, co);
        IndecTable tf = load_or_build(cfg, cf);
        DecompMatrices dm = decomposition_matrices(to, tk, tf, cfg.budget_peel);
        all_ok = all_ok && dm.reduction_pass;
        emit(cfg, "decomp_" + cfg.preset + "_l" + std::to_string(ell), decomp_to_json(g, dm, cfg.preset, ell),
             decomp_to_csv(g, dm));
    }
    return all_ok ? 0 : 1;
}

int cmd_selftest(const JobConfig& cfg) {
    SelftestConfig scfg;
    scfg.peel_budget = cfg.budget_peel;
    scfg.max_weyl = cfg.max_weyl;
    SelftestReport rep = run_selftest(scfg);
    std::cout << rep.to_text();
    fs::create_directories(cfg.out_dir);
    write_text_file((fs::path(cfg.out_dir) / "selftest_report.json").string(), rep.to_json().dump(1));
    std::cout << "wrote " << (fs::path(cfg.out_dir) / "selftest_report.json").string() << "\n";
    return rep.all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "soergel: exact coinvariant-algebra and Soergel-module calculator\n"
        "Computes Kazhdan-Lusztig tables, ell-canonical stalk polynomials,\n"
        "tilting/composition multiplicities and decomposition matrices over\n"
        "Q, Z_(ell) and F_ell.\n\n"
        "Presets: GLn (n<=8), An (n<=7), Bn/Cn (n<=5), Dn (n<=5), G2, F4.\n"
        "Cartan convention: entry [i][j] is the pairing of root i against\n"
        "coroot j; for G2 the first simple root is short, giving\n"
        "[[2,-1],[-3,2]]."};
    app.set_config("--config", "", "read options from a key=value config file");
    JobConfig cfg;
    app.add_option("--preset", cfg.preset, "root datum preset, e.g. A2, B3, GL3, G2");
    app.add_option("--prime", cfg.primes, "prime(s) ell, repeatable");
    app.add_option("--ring", cfg.rings, "coefficient rings: K, O, F (repeatable)");
    app.add_option("--out", cfg.out_dir, "output directory");
    app.add_flag("--no-cache", cfg.no_cache, "ignore and do not write the module cache");
    app.add_option("--budget-peel", cfg.budget_peel, "split-search attempt budget");
    app.add_option("--max-weyl", cfg.max_weyl, "safety cap on the Weyl group size");
    app.require_subcommand(1);
    auto* klpoly = app.add_subcommand("klpoly", "KL polynomial table and the inversion check");
    auto* pcan = app.add_subcommand("pcan", "stalk polynomial tables per (preset, prime, ring)");
    auto* mult = app.add_subcommand("mult", "stalk + tilting/composition multiplicity tables");
    auto* decomp = app.add_subcommand("decomp", "decomposition matrices per (preset, prime)");
    auto* selftest = app.add_subcommand("selftest", "run the full acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (klpoly->parsed()) return cmd_klpoly(cfg);
        if (pcan->parsed()) return cmd_pcan(cfg, false);
        if (mult->parsed()) return cmd_pcan(cfg, true);
        if (decomp->parsed()) return cmd_decomp(cfg);
        if (selftest->parsed()) return cmd_selftest(cfg);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const budget_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 2;
    } catch (const invariant_error& e) {
        std::cerr << "invariant failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
