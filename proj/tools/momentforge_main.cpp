#include "momentforge/cli.hpp"
#include "momentforge/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitTransport = 3;

} // namespace

int main(int argc, char** argv) {
    using namespace momentforge;

    CLI::App app{"momentforge: query reformulation, moment localization, and evaluation "
                 "over precomputed clip features"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "Config file given before the subcommand; keys live in a [subcommand] "
                   "section and command-line flags win");

    cli::RunConfig cfg;
    std::string annotations, features_dir, cache_dir = cfg.cache_dir.string(), out;
    std::string corpus, predictions, base, other, label = "run";
    bool live = false, mock = false;
    SynthSpec synth_spec;
    uint64_t seed = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--window-s", cfg.window.window_seconds, "Window length in seconds")
            ->capture_default_str();
        cmd->add_option("--stride-s", cfg.window.stride_seconds, "Window stride in seconds")
            ->capture_default_str();
        cmd->add_option("--segments", cfg.window.segments_per_window,
                        "Segments per window (candidate grid size)")
            ->capture_default_str();
        cmd->add_option("--top-k", cfg.top_k, "Predictions kept per query")
            ->capture_default_str();
        cmd->add_option("--nms", cfg.nms_threshold, "NMS IoU threshold")->capture_default_str();
        cmd->add_option("--dim", cfg.embed.dim, "Text embedding dimension")
            ->capture_default_str();
        cmd->add_option("--seed", seed, "Embedder / generator seed")->capture_default_str();
    };

    CLI::App* synth = app.add_subcommand("synth", "Generate a seeded synthetic corpus");
    synth->add_option("--out", out, "Corpus output directory")->required();
    synth->add_option("--clips", synth_spec.num_clips, "Number of clips")
        ->capture_default_str();
    synth->add_option("--duration", synth_spec.clip_duration, "Clip duration in seconds")
        ->capture_default_str();
    synth->add_option("--step-s", synth_spec.step_seconds, "Feature step in seconds")
        ->capture_default_str();
    synth->add_option("--events", synth_spec.events_per_clip, "Events per clip")
        ->capture_default_str();
    synth->add_option("--noise", synth_spec.noise_scale, "Feature noise scale")
        ->capture_default_str();
    synth->add_option("--dim", synth_spec.dim, "Feature dimension")->capture_default_str();
    synth->add_option("--seed", seed, "Generator seed")->capture_default_str();

    CLI::App* reform = app.add_subcommand("reformulate", "Rewrite queries via the chat client");
    reform->add_option("--annotations", annotations, "Annotation file")->required();
    reform->add_option("--out", out, "Reformulated corpus output file")->required();
    reform->add_option("--cache-dir", cache_dir, "Completion cache directory")
        ->capture_default_str();
    reform->add_option("--model", cfg.model_hint, "Model hint sent to the endpoint")
        ->capture_default_str();
    reform->add_option("--temperature", cfg.temperature, "Sampling temperature")
        ->capture_default_str();
    reform->add_flag("--live", live, "Use the live endpoint (MOMENTFORGE_API_URL)");
    reform->add_flag("--mock", mock, "Force the deterministic mock client");

    CLI::App* localize = app.add_subcommand("localize", "Localize queries over clip features");
    localize->add_option("--annotations", annotations, "Annotation file")->required();
    localize->add_option("--features-dir", features_dir, "Directory of <clip_id>.mlf files")
        ->required();
    localize->add_option("--corpus", corpus,
                         "Reformulated corpus file; enables step-wise localization");
    localize->add_option("--out", out, "Predictions output file")->required();
    add_common(localize);

    CLI::App* evaluate = app.add_subcommand("evaluate", "Score predictions against annotations");
    evaluate->add_option("--annotations", annotations, "Annotation file")->required();
    evaluate->add_option("--predictions", predictions, "Predictions file")->required();
    evaluate->add_option("--out", out, "Metrics output file")->required();
    evaluate->add_option("--label", label, "Row label for the metrics table")
        ->capture_default_str();
    evaluate->add_option("--ranks", cfg.metrics.ranks, "Ranks n for R@n")
        ->capture_default_str();
    evaluate->add_option("--ious", cfg.metrics.iou_thresholds, "IoU thresholds m")
        ->capture_default_str();

    CLI::App* compare = app.add_subcommand("compare", "Compare two metrics files");
    compare->add_option("--base", base, "Baseline metrics file")->required();
    compare->add_option("--other", other, "Comparison metrics file")->required();
    compare->add_option("--out", out, "Report output file (JSON twin written next to it)")
        ->required();

    CLI::App* stats = app.add_subcommand("stats", "Corpus statistics for a reformulated corpus");
    stats->add_option("--corpus", corpus, "Reformulated corpus file")->required();
    stats->add_option("--out", out, "Stats output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    cfg.annotations = annotations;
    cfg.features_dir = features_dir;
    cfg.cache_dir = cache_dir;
    cfg.out = out;
    cfg.embed.seed = seed;
    cfg.live = live;
    synth_spec.seed = seed;

    try {
        if (synth->parsed()) {
            cli::cmd_synth(synth_spec, out, std::cout);
        } else if (reform->parsed()) {
            std::unique_ptr<ChatClient> client;
            if (mock) {
                client = std::make_unique<MockChatClient>();
            } else if (live) {
                const char* url = std::getenv("MOMENTFORGE_API_URL");
                if (url == nullptr || *url == '\0') {
                    throw ValidationError("--live requires MOMENTFORGE_API_URL");
                }
                const char* key = std::getenv("MOMENTFORGE_API_KEY");
                client = std::make_unique<HttpChatClient>(url, key ? key : "");
            } else {
                client = make_default_client();
            }
            cli::cmd_reformulate(cfg, *client, std::cout);
        } else if (localize->parsed()) {
            std::optional<std::filesystem::path> corpus_path;
            if (!corpus.empty()) corpus_path = corpus;
            cli::cmd_localize(cfg, corpus_path, std::cout);
        } else if (evaluate->parsed()) {
            cli::cmd_evaluate(cfg, predictions, label, std::cout);
        } else if (compare->parsed()) {
            cli::cmd_compare(cfg, base, other, std::cout);
        } else if (stats->parsed()) {
            cli::cmd_stats(cfg, corpus, std::cout);
        }
    } catch (const TransportError& e) {
        std::cerr << "transport error: " << e.what() << "\n";
        return kExitTransport;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
