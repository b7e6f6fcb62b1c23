#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "dynmatch/bench.hpp"

namespace {

void write_out(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << content;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynamic matching size estimation benchmark harness"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "run an experiment over an update stream");
    dynmatch::ExperimentConfig cfg;
    std::string out_path, format = "csv", lazy_mode = "multiplicative",
                combine = "mean";
    run->add_option("--generator", cfg.generator,
                    "er_sliding_window|bipartite_random|tight_edcs_reveal|"
                    "adaptive_matched_deleter|scripted");
    run->add_option("--algorithm", cfg.algorithm,
                    "bipartite_oblivious|bipartite_adaptive|twothirds|general");
    run->add_option("--n", cfg.gen.n, "vertex count");
    run->add_option("--length", cfg.gen.length, "stream length");
    run->add_option("--window", cfg.gen.window, "live-edge target");
    run->add_option("--k", cfg.gen.k, "tight-instance units");
    run->add_option("--beta", cfg.beta, "EDCS beta");
    run->add_option("--delta", cfg.delta, "two-thirds delta");
    run->add_option("--checkpoint-interval", cfg.checkpoint_interval);
    run->add_option("--trials", cfg.trials);
    run->add_option("--seed", cfg.seed);
    run->add_option("--epsilon", cfg.epsilon);
    run->add_option("--ratio-threshold", cfg.ratio_threshold,
                    "count checkpoints below this ratio as violations");
    run->add_option("--sparsify-target", cfg.sparsify_target,
                    "report contraction preservation at this size instead");
    run->add_option("--sparsify-copies", cfg.sparsify_copies);
    run->add_flag("--lazy", cfg.lazy, "fully dynamic lazy pipeline");
    run->add_option("--lazy-mode", lazy_mode, "additive|multiplicative");
    run->add_flag("--spreading", cfg.spreading);
    run->add_option("--amplify", cfg.amplify, "independent lazy instances");
    run->add_option("--combine", combine, "mean|median");
    run->add_option("--sample-c", cfg.est.sample_c, "estimator sample constant");
    run->add_flag("--bipartite-stream", cfg.gen.bipartite,
                  "restrict generated edges to the contiguous bipartition");
    run->add_option("--delete-ratio", cfg.gen.delete_ratio);
    run->add_option("--out", out_path, "output path (default stdout)");
    run->add_option("--format", format, "csv|json");

    // verify-lemma44
    auto* vl = app.add_subcommand("verify-lemma44",
                                  "tight-instance structural analysis");
    int vk = 50, vbeta = 52;
    double vdelta = 0.015, veps = 1e-3;
    std::string vout, vformat = "table";
    vl->add_option("--k", vk);
    vl->add_option("--beta", vbeta);
    vl->add_option("--delta", vdelta);
    vl->add_option("--eps", veps);
    vl->add_option("--out", vout);
    vl->add_option("--format", vformat, "table|json");

    // gen-stream
    auto* gs = app.add_subcommand("gen-stream", "emit an update stream as text");
    dynmatch::GenParams gp;
    std::string gkind = "er_sliding_window", gout;
    std::uint64_t gseed = 1;
    gs->add_option("--kind", gkind);
    gs->add_option("--n", gp.n);
    gs->add_option("--length", gp.length);
    gs->add_option("--window", gp.window);
    gs->add_option("--k", gp.k);
    gs->add_option("--beta", gp.beta);
    gs->add_flag("--bipartite-stream", gp.bipartite);
    gs->add_option("--delete-ratio", gp.delete_ratio);
    gs->add_option("--seed", gseed);
    gs->add_option("--out", gout);

    // audit
    auto* au = app.add_subcommand("audit", "replay a stream and audit invariants");
    std::string ain;
    std::optional<int> abeta;
    double aeps = 0.125;
    au->add_option("--in", ain, "stream file")->required();
    au->add_option("--beta", abeta, "also audit an EDCS with this beta");
    au->add_option("--eps", aeps, "EDCS eps");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            cfg.gen.beta = cfg.beta;
            cfg.lazy_mode = lazy_mode == "additive"
                                ? dynmatch::LazyMode::AdditiveWindow
                                : dynmatch::LazyMode::Multiplicative;
            cfg.combine = combine == "median" ? dynmatch::Combine::Median
                                              : dynmatch::Combine::Mean;
            dynmatch::RunSummary sum = dynmatch::run_experiment(cfg);
            write_out(out_path, format == "json" ? sum.to_json() : sum.csv());
        } else if (*vl) {
            dynmatch::TightnessReport rep =
                dynmatch::verify_lemma44(vk, vbeta, vdelta, veps);
            write_out(vout, vformat == "json" ? rep.to_json() + "\n" : rep.to_table());
            return rep.all_pass() ? 0 : 2;
        } else if (*gs) {
            dynmatch::UpdateStream s = dynmatch::gen_stream(gkind, gp, gseed);
            std::ostringstream os;
            s.save(os);
            write_out(gout, os.str());
        } else if (*au) {
            std::ifstream is(ain);
            if (!is) throw std::runtime_error("cannot open stream file: " + ain);
            dynmatch::UpdateStream s = dynmatch::UpdateStream::load(is);
            bool ok = false;
            std::cout << dynmatch::audit_stream(s, abeta, aeps, ok);
            return ok ? 0 : 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
