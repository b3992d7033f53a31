#include "momentforge/synth.hpp"

#include "momentforge/embed.hpp"
#include "momentforge/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace momentforge {
namespace {

// Self-contained RNG so corpora are reproducible independent of the
// standard library's distribution implementations.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    // Uniform integer in [0, n)
    uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }
    double uniform01() { return (next() >> 11) * 0x1.0p-53; }
    double normal() {
        // Box-Muller; u clamped away from 0.
        const double u = std::max(uniform01(), 1e-300);
        const double v = uniform01();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * 3.14159265358979323846 * v);
    }
};

std::string pad(int value, int width) {
    std::ostringstream os;
    os << value;
    std::string s = os.str();
    while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
    return s;
}

// Words appearing in the generated query texts and in the mock
// reformulations of those texts. Event/ambient/profile tokens must not
// share a hash bucket with any of them, or with each other, inside a clip.
const char* kFrameWords[] = {"where", "is",   "the",  "did",  "i",    "see", "after",
                             "before", "used", "find", "moment", "when", "saw", "next",
                             "this",   "a"};

struct Event {
    int start_step = 0;
    int len_steps = 0;
    std::string token;
    int bucket = 0;
    std::string profile_token;
    int profile_bucket = 0;
};

} // namespace

SynthCorpus synth_corpus(const SynthSpec& spec) {
    if (!spec.valid()) throw ValidationError("synth_corpus: invalid spec");

    const int steps = std::max(1, static_cast<int>(std::llround(spec.clip_duration / spec.step_seconds)));
    const int max_len = std::max(2, std::min(8, steps / (3 * spec.events_per_clip)));
    const int min_len = 2;
    // Worst case: all events at max length with one-step gaps between them.
    if (spec.events_per_clip * max_len + (spec.events_per_clip - 1) > steps) {
        std::ostringstream msg;
        msg << "synth_corpus: " << spec.events_per_clip << " events of up to " << max_len
            << " steps do not fit in " << steps << " feature steps";
        throw ValidationError(msg.str());
    }

    std::set<int> frame_buckets;
    for (const char* w : kFrameWords) frame_buckets.insert(token_bucket(w, spec.dim, spec.seed));

    Rng rng(spec.seed * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL);
    int token_counter = 0;

    SynthCorpus corpus;
    for (int c = 0; c < spec.num_clips; ++c) {
        ClipAnnotations clip;
        clip.meta.clip_id = "clip_" + pad(c, 4);
        clip.meta.duration_s = spec.clip_duration;

        std::set<int> used_buckets = frame_buckets;
        auto fresh_token = [&](const char* prefix) {
            for (;;) {
                std::string tok = std::string(prefix) + pad(token_counter++, 5);
                const int b = token_bucket(tok, spec.dim, spec.seed);
                if (used_buckets.insert(b).second) return std::make_pair(tok, b);
            }
        };

        // Draw event lengths, then scatter the leftover steps into the gaps
        // before/between events (one mandatory step between neighbors).
        std::vector<Event> events(static_cast<size_t>(spec.events_per_clip));
        int total_len = 0;
        for (auto& e : events) {
            e.len_steps = min_len + static_cast<int>(rng.below(static_cast<uint64_t>(max_len - min_len + 1)));
            total_len += e.len_steps;
            std::tie(e.token, e.bucket) = fresh_token("evt");
            std::tie(e.profile_token, e.profile_bucket) = fresh_token("prf");
        }
        int slack = steps - total_len - (spec.events_per_clip - 1);
        int cursor = 0;
        for (int i = 0; i < spec.events_per_clip; ++i) {
            const int pad_steps = static_cast<int>(rng.below(static_cast<uint64_t>(slack + 1)));
            slack -= pad_steps;
            cursor += pad_steps;
            events[static_cast<size_t>(i)].start_step = cursor;
            cursor += events[static_cast<size_t>(i)].len_steps + 1;
        }

        const std::string ambient_token = fresh_token("amb").first;

        // Features: ambient direction on background steps; event steps get
        // the event direction plus a boundary profile that sums to zero over
        // the full event but not over any proper sub-span, so mean-pooled
        // cosine peaks exactly on the planted span.
        FeatureMatrix fm;
        fm.clip_id = clip.meta.clip_id;
        fm.num_steps = steps;
        fm.dim = spec.dim;
        fm.step_seconds = spec.step_seconds;
        fm.values.assign(static_cast<size_t>(steps) * spec.dim, 0.0f);

        const QueryEmbedding ambient = embed_text(ambient_token, spec.dim, spec.seed);
        std::vector<double> row(static_cast<size_t>(spec.dim));
        const double profile_amp = 0.25;
        for (int t = 0; t < steps; ++t) {
            const Event* inside = nullptr;
            for (const auto& e : events) {
                if (t >= e.start_step && t < e.start_step + e.len_steps) {
                    inside = &e;
                    break;
                }
            }
            std::fill(row.begin(), row.end(), 0.0);
            if (inside == nullptr) {
                for (int d = 0; d < spec.dim; ++d) row[static_cast<size_t>(d)] = ambient.values[static_cast<size_t>(d)];
            } else {
                const QueryEmbedding dir = embed_text(inside->token, spec.dim, spec.seed);
                const QueryEmbedding prof = embed_text(inside->profile_token, spec.dim, spec.seed);
                const int offset = t - inside->start_step;
                const double coeff = offset == inside->len_steps - 1
                                         ? -profile_amp * (inside->len_steps - 1)
                                         : profile_amp;
                for (int d = 0; d < spec.dim; ++d) {
                    row[static_cast<size_t>(d)] = dir.values[static_cast<size_t>(d)] +
                                                  coeff * prof.values[static_cast<size_t>(d)];
                }
            }
            if (spec.noise_scale > 0.0) {
                const double per_coord = spec.noise_scale / std::sqrt(static_cast<double>(spec.dim));
                for (int d = 0; d < spec.dim; ++d) row[static_cast<size_t>(d)] += per_coord * rng.normal();
            }
            for (int d = 0; d < spec.dim; ++d) {
                fm.values[static_cast<size_t>(t) * spec.dim + d] = static_cast<float>(row[static_cast<size_t>(d)]);
            }
        }

        auto interval_of = [&](const Event& e) {
            return TemporalInterval{e.start_step * spec.step_seconds,
                                    (e.start_step + e.len_steps) * spec.step_seconds};
        };

        int query_counter = 0;
        auto add_query = [&](const std::string& text, const TemporalInterval& gt) {
            Annotation ann;
            ann.query.query_id = clip.meta.clip_id + "_q" + pad(query_counter++, 3);
            ann.query.text = text;
            ann.ground_truth = clamp(gt, {0.0, clip.meta.duration_s});
            clip.annotations.push_back(ann);
            corpus.oracle[ann.query.query_id] = ann.ground_truth;
        };

        for (const auto& e : events) {
            add_query("Where is the " + e.token + "?", interval_of(e));
        }
        for (size_t i = 0; i + 1 < events.size(); ++i) {
            const Event& a = events[i];
            const Event& b = events[i + 1];
            add_query("Did I see the " + b.token + " after I used the " + a.token + "?",
                      interval_of(b));
        }

        corpus.features.push_back(std::move(fm));
        corpus.annotations.clips.push_back(std::move(clip));
    }

    corpus.annotations.validate();
    return corpus;
}

void write_corpus(const SynthCorpus& corpus, const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir / "features");
    save_annotations(corpus.annotations, out_dir / "annotations.json");
    for (const auto& fm : corpus.features) {
        save_features(fm, out_dir / "features" / (fm.clip_id + ".mlf"));
    }
    nlohmann::json oracle = nlohmann::json::object();
    for (const auto& [qid, iv] : corpus.oracle) {
        oracle[qid] = {iv.start, iv.end};
    }
    std::ofstream out(out_dir / "oracle.json", std::ios::trunc);
    if (!out) throw ParseError("write_corpus: cannot open oracle.json");
    out << oracle.dump(2) << '\n';
}

std::map<std::string, TemporalInterval> load_oracle(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("load_oracle: cannot open " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("load_oracle: " + path.string() + ": " + e.what());
    }
    std::map<std::string, TemporalInterval> oracle;
    for (const auto& [qid, arr] : doc.items()) {
        oracle[qid] = {arr.at(0).get<double>(), arr.at(1).get<double>()};
    }
    return oracle;
}

} // namespace momentforge
