#include "trapbench/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trapbench {

namespace {

/// Indices of the k weakest members, eviction order: lowest fitness
/// first, ties broken by highest index.
std::vector<std::size_t> worst_k_indices(const Population& pop, std::size_t k) {
    std::vector<std::size_t> order(pop.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&pop](std::size_t a, std::size_t b) {
        if (pop[a].fitness != pop[b].fitness)
            return pop[a].fitness < pop[b].fitness;
        return a > b;
    });
    order.resize(std::min(k, order.size()));
    return order;
}

std::pair<Bitstring, Bitstring> variate(const Bitstring& p1, const Bitstring& p2,
                                        const OperatorConfig& cfg, Rng& rng) {
    auto kids = rng.bernoulli(cfg.crossover_prob) ? uniform_crossover(p1, p2, rng)
                                                  : std::make_pair(p1, p2);
    kids.first = bitflip_mutation(kids.first, cfg.mutation_prob, rng);
    kids.second = bitflip_mutation(kids.second, cfg.mutation_prob, rng);
    return kids;
}

/// Common generation pipeline: variant-specific variation and
/// replacement, then the full-population evaluation that charges the
/// generation's N evaluations, then elite reinsertion. Elite fitness is
/// refreshed against the current mask via the environment's uncharged
/// peek so the charged budget stays exactly N per generation.
class GaBase : public Algorithm {
  public:
    GaBase(const OperatorConfig& cfg, int capacity) : cfg_(cfg), capacity_(capacity) {
        cfg_.validate();
        if (capacity < 2)
            throw std::invalid_argument("population size must be >= 2");
    }

    void init(Environment& env, Rng& rng) override {
        pop_.clear();
        pop_.reserve(capacity_);
        const std::size_t length = env.problem().length();
        for (int i = 0; i < capacity_; ++i)
            pop_.push_back({random_bitstring(length, rng), 0.0, -1});
        on_init(env);
        evaluate_all(env);
        refresh_elites();
    }

    void step(Environment& env, Rng& rng) override {
        auto offspring = make_offspring(rng);
        integrate(std::move(offspring), rng);
        evaluate_all(env);
        reinsert_elites(env);
        after_elitism(env, rng);
        refresh_elites();
    }

    const Population& population() const override { return pop_; }

  protected:
    virtual std::vector<Bitstring> make_offspring(Rng& rng) = 0;

    /// Default replacement: offspring population replaces the parents.
    virtual void integrate(std::vector<Bitstring>&& offspring, Rng&) {
        for (std::size_t i = 0; i < pop_.size() && i < offspring.size(); ++i)
            pop_[i] = Individual{std::move(offspring[i]), 0.0, -1};
    }

    virtual void after_elitism(Environment&, Rng&) {}
    virtual void on_init(Environment&) {}

    void evaluate_all(Environment& env) {
        for (auto& ind : pop_) {
            ind.fitness = env.evaluate(ind.genome);
            ind.evaluated_at_period = env.period();
        }
    }

    void reinsert_elites(Environment& env) {
        if (cfg_.elitism <= 0 || elites_.empty())
            return;
        for (auto& e : elites_) {
            e.fitness = env.peek_fitness(e.genome);
            e.evaluated_at_period = env.period();
        }
        apply_elitism(elites_, pop_);
    }

    void refresh_elites() {
        elites_.clear();
        for (std::size_t idx : top_two_indices(pop_))
            elites_.push_back(pop_[idx]);
        if (cfg_.elitism < 2 && elites_.size() > static_cast<std::size_t>(cfg_.elitism))
            elites_.resize(cfg_.elitism);
    }

    OperatorConfig cfg_;
    int capacity_;
    Population pop_;
    std::vector<Individual> elites_;
};

class Gga : public GaBase {
  public:
    using GaBase::GaBase;
    std::string_view name() const override { return "gga"; }

  protected:
    virtual std::size_t pick_partner(std::size_t, Rng& rng) {
        return select_parent_index(pop_, cfg_.selection, rng);
    }

    std::vector<Bitstring> breed(std::size_t count, Rng& rng) {
        std::vector<Bitstring> kids;
        kids.reserve(count + 1);
        while (kids.size() < count) {
            const std::size_t i1 = select_parent_index(pop_, cfg_.selection, rng);
            const std::size_t i2 = pick_partner(i1, rng);
            auto [c1, c2] = variate(pop_[i1].genome, pop_[i2].genome, cfg_, rng);
            kids.push_back(std::move(c1));
            if (kids.size() < count)
                kids.push_back(std::move(c2));
        }
        return kids;
    }

    std::vector<Bitstring> make_offspring(Rng& rng) override {
        return breed(static_cast<std::size_t>(capacity_), rng);
    }
};

class Ssga : public Gga {
  public:
    Ssga(const OperatorConfig& cfg, int capacity) : Gga(cfg, capacity) {
        if (capacity % 2 != 0)
            throw std::invalid_argument("ssga: population size must be even");
    }
    std::string_view name() const override { return "ssga"; }

  protected:
    std::vector<Bitstring> make_offspring(Rng& rng) override {
        return breed(static_cast<std::size_t>(capacity_) / 2, rng);
    }

    // offspring replace the worst half; the surviving half is
    // re-evaluated with everyone else in the generation's full pass
    void integrate(std::vector<Bitstring>&& offspring, Rng&) override {
        const auto victims = worst_k_indices(pop_, offspring.size());
        for (std::size_t j = 0; j < victims.size(); ++j)
            pop_[victims[j]] = Individual{std::move(offspring[j]), 0.0, -1};
    }
};

class Riga : public Gga {
  public:
    enum class Replacement { Worst, Random };

    Riga(const OperatorConfig& cfg, const AlgorithmParams& params, int capacity,
         Replacement replacement)
        : Gga(cfg, capacity), replacement_(replacement),
          immigrants_(resolve_immigrant_count(params.immigrants, capacity)) {
        if (immigrants_ < 0 || immigrants_ > capacity)
            throw std::invalid_argument("riga: immigrant count must lie in [0, N]");
    }

    std::string_view name() const override {
        return replacement_ == Replacement::Worst ? "riga_worst" : "riga_random";
    }

  protected:
    void after_elitism(Environment& env, Rng& rng) override {
        if (immigrants_ == 0)
            return;
        std::vector<std::size_t> slots;
        if (replacement_ == Replacement::Worst) {
            slots = worst_k_indices(pop_, static_cast<std::size_t>(immigrants_));
        } else {
            // random slots, never the two current elites
            const auto protected_idx = top_two_indices(pop_);
            std::vector<std::size_t> eligible;
            eligible.reserve(pop_.size());
            for (std::size_t i = 0; i < pop_.size(); ++i)
                if (std::find(protected_idx.begin(), protected_idx.end(), i) ==
                    protected_idx.end())
                    eligible.push_back(i);
            const std::size_t want =
                std::min(static_cast<std::size_t>(immigrants_), eligible.size());
            for (std::size_t pick : sample_distinct(want, eligible.size(), rng))
                slots.push_back(eligible[pick]);
        }
        const std::size_t length = env.problem().length();
        for (std::size_t idx : slots) {
            Individual fresh{random_bitstring(length, rng), 0.0, env.period()};
            fresh.fitness = env.peek_fitness(fresh.genome);
            pop_[idx] = std::move(fresh);
        }
    }

  private:
    Replacement replacement_;
    int immigrants_;
};

class Amga : public Gga {
  public:
    enum class Polarity { Negative, Positive };

    Amga(const OperatorConfig& cfg, const AlgorithmParams& params, int capacity,
         Polarity polarity)
        : Gga(cfg, capacity), polarity_(polarity), pool_(params.pool) {
        if (pool_ < 1 || pool_ > capacity - 1)
            throw std::invalid_argument("amga: pool size must lie in [1, N-1]");
    }

    std::string_view name() const override {
        return polarity_ == Polarity::Negative ? "namga" : "pamga";
    }

  protected:
    std::size_t pick_partner(std::size_t first, Rng& rng) override {
        return amga_pick_partner(first, pop_, pool_, polarity_ == Polarity::Negative, rng);
    }

  private:
    Polarity polarity_;
    int pool_;
};

class Admga : public GaBase {
  public:
    Admga(const OperatorConfig& cfg, const AlgorithmParams& params, int capacity)
        : GaBase(cfg, capacity), static_threshold_(params.static_threshold) {}

    std::string_view name() const override { return "admga"; }
    std::optional<int> threshold() const override { return threshold_; }

  protected:
    void on_init(Environment& env) override {
        const int length = static_cast<int>(env.problem().length());
        threshold_ = static_threshold_ ? length - 1 : length / 4;
    }

    std::vector<Bitstring> make_offspring(Rng& rng) override {
        auto result = admga_create_new(pop_, threshold_, cfg_, rng);
        threshold_ = result.threshold;
        return std::move(result.offspring);
    }

    // offspring replace the worst |offspring| parents
    void integrate(std::vector<Bitstring>&& offspring, Rng&) override {
        if (offspring.size() > pop_.size())
            offspring.resize(pop_.size());
        const auto victims = worst_k_indices(pop_, offspring.size());
        for (std::size_t j = 0; j < victims.size(); ++j)
            pop_[victims[j]] = Individual{std::move(offspring[j]), 0.0, -1};
    }

  private:
    bool static_threshold_ = false;
    int threshold_ = 0;
};

} // namespace

int resolve_immigrant_count(int immigrants, int capacity) {
    if (immigrants >= 0)
        return immigrants;
    return static_cast<int>(std::llround(capacity * 4.0 / 30.0));
}

std::size_t amga_pick_partner(std::size_t first, const Population& pop, int pool,
                              bool dissortative, Rng& rng) {
    if (pool < 1 || static_cast<std::size_t>(pool) > pop.size() - 1)
        throw std::invalid_argument("amga_pick_partner: pool must lie in [1, N-1]");
    const auto raw = sample_distinct(static_cast<std::size_t>(pool), pop.size() - 1, rng);
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t chosen = npos;
    std::size_t chosen_dist = 0;
    for (std::size_t r : raw) {
        const std::size_t idx = r >= first ? r + 1 : r; // skip the first parent
        const std::size_t d = hamming(pop[first].genome, pop[idx].genome);
        const bool better =
            chosen == npos || (dissortative ? d > chosen_dist : d < chosen_dist);
        if (better) {
            chosen = idx;
            chosen_dist = d;
        }
    }
    return chosen;
}

AdmgaCreateResult admga_create_new(const Population& pop, int threshold,
                                   const OperatorConfig& cfg, Rng& rng) {
    if (pop.size() < 2)
        throw std::invalid_argument("admga_create_new: population must hold >= 2 members");
    const int length = static_cast<int>(pop.front().genome.size());
    const std::size_t mating_events = pop.size() / 2;

    AdmgaCreateResult result;
    result.threshold = std::clamp(threshold, 0, length);
    int successful = 0;
    int failed = 0;
    // The success/failure counters live outside the batch loop, so a
    // string of failing batches keeps dragging the threshold down even
    // once a batch finally recombines.
    while (successful < 1) {
        AdmgaMatingBatch batch;
        for (std::size_t i = 0; i < mating_events; ++i) {
            const std::size_t i1 = select_parent_index(pop, cfg.selection, rng);
            const std::size_t i2 = select_parent_index(pop, cfg.selection, rng);
            const std::size_t dist = hamming(pop[i1].genome, pop[i2].genome);
            if (dist >= static_cast<std::size_t>(result.threshold)) {
                auto [c1, c2] = variate(pop[i1].genome, pop[i2].genome, cfg, rng);
                result.offspring.push_back(std::move(c1));
                result.offspring.push_back(std::move(c2));
                ++successful;
                ++batch.successes;
            } else {
                ++failed;
                ++batch.failures;
            }
        }
        if (failed > successful)
            result.threshold = std::max(result.threshold - 1, 0);
        else
            result.threshold = std::min(result.threshold + 1, length);
        batch.threshold_after = result.threshold;
        result.batches.push_back(batch);
    }
    return result;
}

StaticSolveResult admga_solve_static(const ConcatTrapProblem& problem, int capacity,
                                     double pm, std::uint64_t seed,
                                     std::uint64_t max_evaluations) {
    Environment env(problem);
    Rng rng(Rng::derive_seed(seed, "algo"));
    OperatorConfig cfg;
    cfg.mutation_prob = pm;

    const std::size_t length = problem.length();
    const double target = problem.max_fitness();

    Population pop;
    pop.reserve(capacity);
    for (int i = 0; i < capacity; ++i) {
        Individual ind{random_bitstring(length, rng), 0.0, 0};
        ind.fitness = env.evaluate(ind.genome);
        pop.push_back(std::move(ind));
    }

    StaticSolveResult result;
    int threshold = static_cast<int>(length) - 1;
    auto track_best = [&] {
        const double best = pop[best_index(pop)].fitness;
        if (best > result.best_fitness) {
            result.best_fitness = best;
            result.evaluations = env.evaluations();
        }
    };
    track_best();

    while (result.best_fitness < target && env.evaluations() < max_evaluations) {
        auto created = admga_create_new(pop, threshold, cfg, rng);
        threshold = created.threshold;
        for (auto& genome : created.offspring) {
            if (env.evaluations() >= max_evaluations)
                break;
            Individual ind{std::move(genome), 0.0, 0};
            ind.fitness = env.evaluate(ind.genome);
            pop.push_back(std::move(ind));
        }
        // offspring compete with the parents for the N slots
        std::stable_sort(pop.begin(), pop.end(), [](const Individual& a, const Individual& b) {
            return a.fitness > b.fitness;
        });
        pop.resize(capacity);
        ++result.generations;
        track_best();
    }
    result.solved = result.best_fitness >= target;
    if (!result.solved)
        result.evaluations = env.evaluations();
    return result;
}

AlgorithmRegistry& AlgorithmRegistry::instance() {
    static AlgorithmRegistry registry;
    return registry;
}

AlgorithmRegistry::AlgorithmRegistry() {
    register_factory("gga", [](const OperatorConfig& cfg, const AlgorithmParams&, int n) {
        return std::make_unique<Gga>(cfg, n);
    });
    register_factory("ssga", [](const OperatorConfig& cfg, const AlgorithmParams&, int n) {
        return std::make_unique<Ssga>(cfg, n);
    });
    register_factory("admga", [](const OperatorConfig& cfg, const AlgorithmParams& p, int n) {
        return std::make_unique<Admga>(cfg, p, n);
    });
    register_factory("riga_worst", [](const OperatorConfig& cfg, const AlgorithmParams& p, int n) {
        return std::make_unique<Riga>(cfg, p, n, Riga::Replacement::Worst);
    });
    register_factory("riga_random", [](const OperatorConfig& cfg, const AlgorithmParams& p, int n) {
        return std::make_unique<Riga>(cfg, p, n, Riga::Replacement::Random);
    });
    register_factory("namga", [](const OperatorConfig& cfg, const AlgorithmParams& p, int n) {
        return std::make_unique<Amga>(cfg, p, n, Amga::Polarity::Negative);
    });
    register_factory("pamga", [](const OperatorConfig& cfg, const AlgorithmParams& p, int n) {
        return std::make_unique<Amga>(cfg, p, n, Amga::Polarity::Positive);
    });
}

void AlgorithmRegistry::register_factory(const std::string& name, AlgorithmFactory factory) {
    for (auto& [existing, fn] : factories_)
        if (existing == name) {
            fn = std::move(factory);
            return;
        }
    factories_.emplace_back(name, std::move(factory));
}

std::unique_ptr<Algorithm> AlgorithmRegistry::create(const std::string& name,
                                                     const OperatorConfig& cfg,
                                                     const AlgorithmParams& params,
                                                     int capacity) const {
    for (const auto& [existing, factory] : factories_)
        if (existing == name)
            return factory(cfg, params, capacity);
    throw std::invalid_argument("unknown algorithm: " + name);
}

bool AlgorithmRegistry::contains(const std::string& name) const {
    for (const auto& [existing, _] : factories_)
        if (existing == name)
            return true;
    return false;
}

std::vector<std::string> AlgorithmRegistry::names() const {
    std::vector<std::string> out;
    out.reserve(factories_.size());
    for (const auto& [name, _] : factories_)
        out.push_back(name);
    return out;
}

} // namespace trapbench
