#include "dbnb/topology.hpp"

#include "dbnb/boosting.hpp"
#include "dbnb/error.hpp"
#include "dbnb/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

namespace dbnb {

void SearchSpec::validate(const Schema& schema) const {
    if (budget < 1) throw ArgumentError("search budget must be at least 1");
    if (parallelism < 1) throw ArgumentError("parallelism must be at least 1");
    if (candidates.size() != schema.attribute_count())
        throw ArgumentError("search spec lists " + std::to_string(candidates.size()) + " candidate ranges, schema has " +
                            std::to_string(schema.attribute_count()) + " attributes");
    for (std::size_t m = 0; m < candidates.size(); ++m) {
        const auto& attr = schema.attributes[m];
        if (candidates[m].empty()) throw ArgumentError("no candidate bin counts for attribute '" + attr.name + "'");
        for (auto c : candidates[m]) {
            if (c < 1) throw ArgumentError("candidate bin count 0 for attribute '" + attr.name + "'");
            if (attr.discrete() && c != attr.values.size())
                throw ArgumentError("discrete attribute '" + attr.name + "' only admits " +
                                    std::to_string(attr.values.size()) + " bins");
        }
    }
}

SearchSpec make_search_spec(const Schema& schema, std::size_t lo, std::size_t hi) {
    if (lo < 1 || hi < lo) throw ArgumentError("bad candidate range");
    SearchSpec spec;
    for (const auto& a : schema.attributes) {
        if (a.discrete()) {
            spec.candidates.push_back({a.values.size()});
            continue;
        }
        std::vector<std::size_t> range;
        for (auto c = lo; c <= hi; ++c) range.push_back(c);
        spec.candidates.push_back(std::move(range));
    }
    return spec;
}

Topology baseline_topology(const Schema& schema, const SearchSpec& spec) {
    const auto preferred = default_topology(schema, 5);
    Topology t;
    for (std::size_t m = 0; m < spec.candidates.size(); ++m) {
        const auto& c = spec.candidates[m];
        const bool offered = std::find(c.begin(), c.end(), preferred.bin_counts[m]) != c.end();
        t.bin_counts.push_back(offered ? preferred.bin_counts[m] : c.front());
    }
    return t;
}

namespace {

class TrialRunner {
public:
    TrialRunner(const Dataset& train, const Dataset& validation, const TrainConfig& base, const SearchSpec& spec,
                const TrialObserver& observer, SearchResult& result)
        : train_(train), validation_(validation), base_(base), spec_(spec), observer_(observer), result_(result) {}

    /// Trains the not-yet-seen topologies of `batch` (in order, within budget) and
    /// returns the index into result.trials of every topology in `batch`, or npos
    /// for those cut off by the budget.
    std::vector<std::size_t> run(const std::vector<Topology>& batch) {
        std::vector<Topology> fresh;
        for (const auto& t : batch) {
            if (seen_.count(t.bin_counts) || std::find(fresh.begin(), fresh.end(), t) != fresh.end()) continue;
            if (result_.trials.size() + fresh.size() >= spec_.budget) {
                result_.truncated = true;
                break;
            }
            fresh.push_back(t);
        }

        std::vector<Trial> trials(fresh.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (auto i = next++; i < fresh.size(); i = next++) trials[i] = run_one(fresh[i]);
        };
        const auto threads = std::min(spec_.parallelism, fresh.size());
        if (threads <= 1) {
            worker();
        } else {
            std::vector<std::jthread> pool;
            for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
        }

        for (auto& trial : trials) {
            seen_[trial.topology.bin_counts] = result_.trials.size();
            if (observer_) observer_(trial);
            result_.trials.push_back(std::move(trial));
        }

        std::vector<std::size_t> out;
        out.reserve(batch.size());
        for (const auto& t : batch) {
            const auto it = seen_.find(t.bin_counts);
            out.push_back(it == seen_.end() ? npos : it->second);
        }
        return out;
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    Trial run_one(const Topology& topology) const {
        TrainConfig cfg = base_;
        cfg.topology = topology;
        const Model model = train(train_, cfg);
        Trial t;
        t.topology = topology;
        t.train_accuracy = evaluate(model, train_).accuracy();
        t.validation_accuracy = evaluate(model, validation_).accuracy();
        t.epochs = model.trace.epochs();
        t.converged = model.trace.converged();
        return t;
    }

    const Dataset& train_;
    const Dataset& validation_;
    const TrainConfig& base_;
    const SearchSpec& spec_;
    const TrialObserver& observer_;
    SearchResult& result_;
    std::map<std::vector<std::size_t>, std::size_t> seen_;
};

void exhaustive_search(const SearchSpec& spec, TrialRunner& runner) {
    // One past the budget, so the runner can tell that the space was cut short.
    std::vector<Topology> all;
    std::vector<std::size_t> idx(spec.candidates.size(), 0);
    while (all.size() <= spec.budget) {
        Topology t;
        for (std::size_t m = 0; m < idx.size(); ++m) t.bin_counts.push_back(spec.candidates[m][idx[m]]);
        all.push_back(std::move(t));
        std::size_t m = idx.size();
        for (; m > 0; --m) {
            if (++idx[m - 1] < spec.candidates[m - 1].size()) break;
            idx[m - 1] = 0;
        }
        if (m == 0) break;
    }
    runner.run(all);
}

}  // namespace

SearchResult coordinate_search(const Dataset& train, const Dataset& validation, const SearchSpec& spec,
                               const TrainConfig& base_config, const TrialObserver& observer) {
    if (train.empty() || validation.empty()) throw ArgumentError("search needs nonempty train and validation sets");
    if (!(train.schema == validation.schema)) throw ArgumentError("train and validation schemas differ");
    spec.validate(train.schema);
    base_config.validate();

    SearchResult result;
    TrialRunner runner(train, validation, base_config, spec, observer, result);

    if (spec.exhaustive) {
        exhaustive_search(spec, runner);
    } else {
        Topology current = baseline_topology(train.schema, spec);
        const auto first = runner.run({current});
        double current_acc = result.trials[first[0]].validation_accuracy;

        for (std::size_t pass = 0; pass < spec.max_passes && !result.truncated; ++pass) {
            // Sweep: one attribute at a time, others held at `current`.
            std::vector<Topology> batch;
            std::vector<std::size_t> owner;
            for (std::size_t m = 0; m < spec.candidates.size(); ++m)
                for (auto c : spec.candidates[m]) {
                    if (c == current.bin_counts[m]) continue;
                    auto t = current;
                    t.bin_counts[m] = c;
                    batch.push_back(std::move(t));
                    owner.push_back(m);
                }
            if (batch.empty()) break;
            const auto idx = runner.run(batch);

            // Per-attribute winner: strictly better than current, first candidate on ties.
            std::vector<std::size_t> winner(spec.candidates.size(), TrialRunner::npos);
            for (std::size_t i = 0; i < batch.size(); ++i) {
                if (idx[i] == TrialRunner::npos) continue;
                const double acc = result.trials[idx[i]].validation_accuracy;
                auto& w = winner[owner[i]];
                const double best = w == TrialRunner::npos ? current_acc : result.trials[w].validation_accuracy;
                if (acc > best) w = idx[i];
            }

            // Candidates for the next point: the combination first, then single winners.
            std::vector<std::size_t> contenders;
            Topology combined = current;
            std::size_t improved = 0;
            for (std::size_t m = 0; m < winner.size(); ++m)
                if (winner[m] != TrialRunner::npos) {
                    combined.bin_counts[m] = result.trials[winner[m]].topology.bin_counts[m];
                    ++improved;
                }
            if (improved == 0) break;
            if (improved > 1) {
                const auto c = runner.run({combined});
                if (c[0] != TrialRunner::npos) contenders.push_back(c[0]);
            }
            for (auto w : winner)
                if (w != TrialRunner::npos) contenders.push_back(w);

            std::size_t next = contenders.front();
            for (auto c : contenders)
                if (result.trials[c].validation_accuracy > result.trials[next].validation_accuracy) next = c;
            if (!(result.trials[next].validation_accuracy > current_acc)) break;
            current = result.trials[next].topology;
            current_acc = result.trials[next].validation_accuracy;
        }
    }

    if (result.trials.empty()) throw ArgumentError("search ran no trials");
    std::size_t best = 0;
    for (std::size_t i = 1; i < result.trials.size(); ++i)
        if (result.trials[i].validation_accuracy > result.trials[best].validation_accuracy) best = i;
    result.best = result.trials[best].topology;
    result.best_accuracy = result.trials[best].validation_accuracy;
    return result;
}

}  // namespace dbnb
