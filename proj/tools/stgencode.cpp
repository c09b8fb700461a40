// Command-line front end: build code descriptors, embed and extract file
// payloads, run distortion experiments, and self-verify.
//
// Exit codes: 0 success, 1 usage error, 2 data/integrity error, 3 capacity
// error, 4 verification failure.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "stgen/analysis.hpp"
#include "stgen/experiment.hpp"
#include "stgen/framing.hpp"
#include "stgen/oracle.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitVerify = 4;

std::vector<std::uint8_t> read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    return data;
}

void write_file(const std::string &path, std::span<const std::uint8_t> data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char *>(data.data()),
              static_cast<std::streamsize>(data.size()));
    if (!out)
        throw std::runtime_error("write to " + path + " failed");
}

void write_text(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
}

stgen::StGenCode load_descriptor(const std::string &path) {
    const auto bytes = read_file(path);
    return stgen::StGenCode::from_descriptor_json(
        std::string_view(reinterpret_cast<const char *>(bytes.data()), bytes.size()));
}

// Fixed per-code randomness so that experiment CSVs depend only on flags.
std::uint64_t preset_code_seed(int row, int target_n) {
    return stgen::mix_seed(0x5747656e436f6465ULL, static_cast<std::uint64_t>(row) * 1000003u +
                                                      static_cast<std::uint64_t>(target_n));
}

struct CommonDecoderFlags {
    int w1 = 2;
    int wb = 2;
    int list_cap = 256;

    stgen::DecoderConfig config() const {
        stgen::DecoderConfig cfg;
        cfg.start_weight = w1;
        cfg.round_weight = wb;
        cfg.list_cap = list_cap;
        return cfg;
    }
};

int cmd_build(const std::string &out_path, int row, int target_n, std::uint64_t seed,
              const std::string &base_id, int k1, int n1, int v) {
    stgen::StGenParams params;
    if (row > 0) {
        params = stgen::preset_params(row, target_n, seed);
    } else {
        if (base_id.empty() || v <= 0) {
            std::cerr << "build: need either --table2-row or --base with --v\n";
            return kExitUsage;
        }
        params.base = stgen::find_base_code(base_id);
        params.k1 = k1;
        params.n1 = n1;
        params.k2 = params.base.k;
        params.n2 = params.base.n - params.base.k;
        params.blocks = v;
        params.seed = seed;
    }
    const stgen::StGenCode code = stgen::StGenCode::build(params);
    write_text(out_path, code.to_descriptor_json());
    const double alpha = static_cast<double>(code.n() - code.k()) / code.n();
    std::fprintf(stderr, "built (n,k) = (%d,%d), alpha = %.6f, v = %d\n", code.n(), code.k(),
                 alpha, code.blocks());
    return 0;
}

int cmd_embed(const std::string &desc, const std::string &cover_path,
              const std::string &message_path, const std::string &out_path,
              const CommonDecoderFlags &flags) {
    const stgen::StegoContext ctx(load_descriptor(desc), flags.config());
    const auto cover = read_file(cover_path);
    const auto message = read_file(message_path);
    stgen::EmbedStats stats;
    const auto stego = stgen::embed_message(ctx, cover, message, &stats);
    write_file(out_path, stego);
    nlohmann::ordered_json j;
    j["blocks_total"] = stats.blocks_total;
    j["blocks_used"] = stats.blocks_used;
    j["total_changes"] = stats.total_changes;
    j["mean_changes_per_used_block"] = stats.mean_changes_per_used_block;
    std::cerr << j.dump() << "\n";
    return 0;
}

int cmd_extract(const std::string &desc, const std::string &stego_path,
                const std::string &out_path, const CommonDecoderFlags &flags) {
    const stgen::StegoContext ctx(load_descriptor(desc), flags.config());
    const auto stego = read_file(stego_path);
    const auto message = stgen::extract_message(ctx, stego);
    write_file(out_path, message);
    std::fprintf(stderr, "extracted %zu bytes\n", message.size());
    return 0;
}

int cmd_experiment(const std::vector<int> &table_targets, const std::vector<std::string> &descs,
                   int trials, int w1, const std::vector<int> &wbs, const std::vector<int> &caps,
                   std::uint64_t seed, int threads, const std::string &out_path) {
    std::vector<stgen::StGenCode> codes;
    for (int target : table_targets) {
        for (int row = 1; row <= 6; ++row) {
            const auto &preset = stgen::preset_rows()[row - 1];
            const int n = target == 1500 ? preset.target_n_1500 : preset.target_n_1000;
            codes.push_back(
                stgen::StGenCode::build(stgen::preset_params(row, n, preset_code_seed(row, n))));
        }
    }
    for (const auto &d : descs)
        codes.push_back(load_descriptor(d));
    if (codes.empty()) {
        std::cerr << "experiment: no codes selected (use --table2-n or --descriptor)\n";
        return kExitUsage;
    }

    std::ostringstream csv;
    csv << stgen::csv_header() << "\n";
    for (const auto &code : codes) {
        for (int wb : wbs) {
            for (int cap : caps) {
                stgen::DecoderConfig cfg;
                cfg.start_weight = w1;
                cfg.round_weight = wb;
                cfg.list_cap = cap;
                const auto rec = stgen::run_experiment(code, cfg, trials, seed, threads);
                csv << stgen::csv_row(rec) << "\n";
            }
        }
    }
    write_text(out_path, csv.str());
    return 0;
}

struct VerifyReport {
    int failures = 0;
    void check(const std::string &name, bool ok, const std::string &detail) {
        std::printf("%s %s%s%s\n", ok ? "PASS" : "FAIL", name.c_str(),
                    detail.empty() ? "" : " - ", detail.c_str());
        if (!ok)
            ++failures;
    }
};

int cmd_verify(const std::string &desc, bool fast) {
    VerifyReport rep;

    // Catalog covering radii.
    {
        bool ok = true;
        std::string detail;
        for (const auto &base : stgen::base_catalog()) {
            const std::size_t r = stgen::covering_radius(base.generator());
            if (static_cast<int>(r) != base.radius)
                ok = false;
            detail += base.id + "=" + std::to_string(r) + " ";
        }
        rep.check("base-code-covering-radii", ok, detail);
    }

    // G * H^T vanishes for the preset codes.
    {
        bool ok = true;
        std::string detail;
        for (int row = 1; row <= (fast ? 2 : 6); ++row) {
            const auto &preset = stgen::preset_rows()[row - 1];
            const auto params = stgen::preset_params(row, preset.target_n_1000,
                                                     preset_code_seed(row, preset.target_n_1000));
            const auto code = stgen::StGenCode::build(params);
            const bool zero =
                multiply_transposed(code.generator_matrix(), code.parity_check_matrix()).is_zero();
            if (!zero)
                ok = false;
            detail += "(" + std::to_string(code.n()) + "," + std::to_string(code.k()) + ") ";
        }
        rep.check("generator-parity-orthogonality", ok, detail);
    }

    // Deterministic rebuilds.
    {
        const auto params = stgen::preset_params(2, 1001, 42);
        const auto a = stgen::StGenCode::build(params).to_descriptor_json();
        const auto b = stgen::StGenCode::build(params).to_descriptor_json();
        rep.check("deterministic-build", a == b, "(1001,507) descriptor stable");
    }

    // Decoder against the exhaustive oracle on small codes.
    if (!fast) {
        std::mt19937_64 rng(0x7e57);
        bool contract_ok = true, floor_ok = true;
        int trials = 0, optimal = 0;
        for (int cs = 0; cs < 5; ++cs) {
            stgen::StGenParams params;
            params.k1 = 3;
            params.n1 = 1;
            params.base = stgen::base_catalog()[cs % stgen::base_catalog().size()];
            params.k2 = params.base.k;
            params.n2 = params.base.n - params.base.k;
            params.blocks = 3;
            params.seed = rng();
            if (params.length() > 24)
                continue;
            const auto code = stgen::StGenCode::build(params);
            const auto g = code.generator_matrix();
            for (int t = 0; t < 10; ++t) {
                const auto c0 = stgen::BitVector::random(code.n(), rng);
                const auto res = stgen::decode_close(code, c0, {});
                if (!((code.encode(res.x) ^ res.e) == c0))
                    contract_ok = false;
                const auto best = stgen::nearest_codeword(g, c0);
                if (res.weight < static_cast<int>(best.distance))
                    floor_ok = false;
                if (res.weight == static_cast<int>(best.distance))
                    ++optimal;
                ++trials;
            }
        }
        rep.check("decoder-output-contract", contract_ok, std::to_string(trials) + " decodes");
        rep.check("decoder-oracle-floor", floor_ok,
                  "optimal " + std::to_string(optimal) + "/" + std::to_string(trials));
    }

    // Embed/extract round trip.
    {
        const auto code = stgen::StGenCode::build(stgen::preset_params(2, 1001, 42));
        const stgen::StegoContext ctx(code, {});
        std::mt19937_64 rng(0xabcd);
        bool ok = true;
        const int trials = fast ? 3 : 10;
        for (int t = 0; t < trials; ++t) {
            const auto y = stgen::BitVector::random(code.n(), rng);
            const auto m = stgen::BitVector::random(code.n() - code.k(), rng);
            if (!(stgen::ext(ctx, stgen::emb(ctx, y, m).stego) == m))
                ok = false;
        }
        rep.check("embed-extract-roundtrip", ok, std::to_string(trials) + " random pairs");
    }

    // Optional descriptor audit.
    if (!desc.empty()) {
        const auto code = load_descriptor(desc);
        rep.check("descriptor-parity",
                  multiply_transposed(code.generator_matrix(), code.parity_check_matrix())
                      .is_zero(),
                  "G*H^T = 0");
        const auto rebuilt = stgen::StGenCode::build(code.params());
        rep.check("descriptor-determinism",
                  rebuilt.to_descriptor_json() == code.to_descriptor_json(),
                  "stored blocks match the seed");
    }

    if (rep.failures) {
        std::printf("%d check(s) failed\n", rep.failures);
        return kExitVerify;
    }
    std::printf("all checks passed\n");
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Staircase-generator codes: matrix embedding toolkit"};
    app.require_subcommand(1);

    // build
    auto *build = app.add_subcommand("build", "construct a code and write its descriptor");
    std::string build_out;
    int build_row = 0, build_target = 1000, build_k1 = 14, build_n1 = 1, build_v = 0;
    std::uint64_t build_seed = 1;
    std::string build_base;
    build->add_option("-o,--out", build_out, "descriptor output path (default stdout)");
    build->add_option("--table2-row", build_row, "preset parameter row (1-6)")
        ->check(CLI::Range(1, 6));
    build->add_option("--target-n", build_target, "desired code length for the preset row");
    build->add_option("--base", build_base, "base code id, e.g. (2,1)1");
    build->add_option("--k1", build_k1, "first block dimension");
    build->add_option("--n1", build_n1, "first block parity width");
    build->add_option("--v", build_v, "number of blocks");
    build->add_option("--seed", build_seed, "randomness seed for B_1 and the B'_i");

    // embed
    auto *embed = app.add_subcommand("embed", "embed a message file into a cover file");
    std::string em_desc, em_cover, em_msg, em_out;
    CommonDecoderFlags em_flags;
    embed->add_option("-c,--descriptor", em_desc, "code descriptor")->required();
    embed->add_option("--cover", em_cover, "cover file")->required();
    embed->add_option("--message", em_msg, "message file")->required();
    embed->add_option("-o,--out", em_out, "stego output file")->required();
    embed->add_option("--w1", em_flags.w1, "starting weight limit");
    embed->add_option("--wb", em_flags.wb, "round weight limit");
    embed->add_option("--lcap", em_flags.list_cap, "list size cap");

    // extract
    auto *extract = app.add_subcommand("extract", "extract a message from a stego file");
    std::string ex_desc, ex_stego, ex_out;
    CommonDecoderFlags ex_flags;
    extract->add_option("-c,--descriptor", ex_desc, "code descriptor")->required();
    extract->add_option("--stego", ex_stego, "stego file")->required();
    extract->add_option("-o,--out", ex_out, "message output file")->required();

    // experiment
    auto *exp = app.add_subcommand("experiment", "Monte-Carlo distortion measurements as CSV");
    std::vector<int> exp_tables;
    std::vector<std::string> exp_descs;
    std::vector<int> exp_wbs{2}, exp_caps{256};
    int exp_trials = 50, exp_w1 = 2, exp_threads = 0;
    std::uint64_t exp_seed = 1;
    std::string exp_out;
    exp->add_option("--table2-n", exp_tables,
                    "run the six preset rows near this length (1000 or 1500)")
        ->check(CLI::IsMember({1000, 1500}));
    exp->add_option("--descriptor", exp_descs, "run a code loaded from a descriptor");
    exp->add_option("--trials", exp_trials, "Monte-Carlo trials per row (0 = theory only)");
    exp->add_option("--w1", exp_w1, "starting weight limit");
    exp->add_option("--wb", exp_wbs, "round weight limits to sweep");
    exp->add_option("--lcap", exp_caps, "list caps to sweep");
    exp->add_option("--seed", exp_seed, "trial randomness seed");
    exp->add_option("--threads", exp_threads, "worker threads (0 = auto)");
    exp->add_option("-o,--out", exp_out, "CSV output path (default stdout)");

    // verify
    auto *verify = app.add_subcommand("verify", "run the built-in consistency checks");
    std::string ver_desc;
    bool ver_fast = false;
    verify->add_option("--descriptor", ver_desc, "also audit this descriptor");
    verify->add_flag("--fast", ver_fast, "skip the slower checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (build->parsed())
            return cmd_build(build_out, build_row, build_target, build_seed, build_base, build_k1,
                             build_n1, build_v);
        if (embed->parsed())
            return cmd_embed(em_desc, em_cover, em_msg, em_out, em_flags);
        if (extract->parsed())
            return cmd_extract(ex_desc, ex_stego, ex_out, ex_flags);
        if (exp->parsed())
            return cmd_experiment(exp_tables, exp_descs, exp_trials, exp_w1, exp_wbs, exp_caps,
                                  exp_seed, exp_threads, exp_out);
        if (verify->parsed())
            return cmd_verify(ver_desc, ver_fast);
    } catch (const stgen::capacity_error &e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const stgen::integrity_error &e) {
        std::cerr << "integrity error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
