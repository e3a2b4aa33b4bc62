#include "costboost/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "costboost/error.hpp"

namespace costboost {

Dataset::Dataset(std::vector<double> features, std::size_t num_features, std::vector<int> labels,
                 int num_classes, std::vector<std::string> label_names)
    : features_(std::move(features)),
      num_features_(num_features),
      labels_(std::move(labels)),
      num_classes_(num_classes),
      class_counts_(num_classes > 0 ? static_cast<std::size_t>(num_classes) : 0, 0),
      label_names_(std::move(label_names)) {
    if (num_features_ < 1) throw ContractError("dataset needs at least one feature");
    if (num_classes_ < 2) throw ContractError("dataset needs at least two classes");
    if (features_.size() != labels_.size() * num_features_) {
        throw ContractError("feature matrix has " + std::to_string(features_.size()) +
                            " entries, expected " + std::to_string(labels_.size()) + " x " +
                            std::to_string(num_features_));
    }
    if (!label_names_.empty() && label_names_.size() != static_cast<std::size_t>(num_classes_)) {
        throw ContractError("label name table must have one entry per class");
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        const int y = labels_[i];
        if (y < 1 || y > num_classes_) {
            throw ContractError("label " + std::to_string(y) + " at row " + std::to_string(i) +
                                " outside 1.." + std::to_string(num_classes_));
        }
        ++class_counts_[static_cast<std::size_t>(y - 1)];
    }
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
    std::vector<double> x;
    x.reserve(indices.size() * num_features_);
    std::vector<int> y;
    y.reserve(indices.size());
    for (std::size_t i : indices) {
        if (i >= size()) throw ContractError("subset index out of range");
        auto r = row(i);
        x.insert(x.end(), r.begin(), r.end());
        y.push_back(labels_[i]);
    }
    return Dataset(std::move(x), num_features_, std::move(y), num_classes_, label_names_);
}

// ---------------------------------------------------------------------------
// Synthetic generation

void SynthConfig::validate() const {
    if (n_samples < 1) throw ConfigError("n_samples must be positive");
    if (n_features < 1) throw ConfigError("n_features must be positive");
    if (n_informative < 1 || n_informative > n_features) {
        throw ConfigError("n_informative must lie in [1, n_features]");
    }
    if (n_classes < 2) throw ConfigError("n_classes must be at least 2");
    if (clusters_per_class < 1) throw ConfigError("clusters_per_class must be positive");
    if (!(class_sep > 0.0) || !std::isfinite(class_sep)) {
        throw ConfigError("class_sep must be a positive real");
    }
    if (weights.size() != static_cast<std::size_t>(n_classes)) {
        throw ConfigError("weights must have n_classes entries");
    }
    double total = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) throw ConfigError("weights entries must be positive");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-9) throw ConfigError("weights must sum to 1");
    const std::size_t clusters = clusters_per_class * static_cast<std::size_t>(n_classes);
    if (n_informative < 63 && clusters > (std::size_t{1} << n_informative)) {
        throw ConfigError("clusters_per_class * n_classes exceeds 2^n_informative hypercube vertices");
    }
}

void to_json(nlohmann::json& j, const SynthConfig& c) {
    j = nlohmann::json{{"n_samples", c.n_samples},
                       {"n_features", c.n_features},
                       {"n_informative", c.n_informative},
                       {"n_classes", c.n_classes},
                       {"clusters_per_class", c.clusters_per_class},
                       {"class_sep", c.class_sep},
                       {"weights", c.weights},
                       {"seed", c.seed}};
}

void from_json(const nlohmann::json& j, SynthConfig& c) {
    c.n_samples = j.value("n_samples", c.n_samples);
    c.n_features = j.value("n_features", c.n_features);
    c.n_informative = j.value("n_informative", c.n_informative);
    c.n_classes = j.value("n_classes", c.n_classes);
    c.clusters_per_class = j.value("clusters_per_class", c.clusters_per_class);
    c.class_sep = j.value("class_sep", c.class_sep);
    c.weights = j.value("weights", c.weights);
    c.seed = j.value("seed", c.seed);
}

std::vector<std::size_t> synthetic_class_counts(const SynthConfig& config) {
    config.validate();
    const auto n = static_cast<long long>(config.n_samples);
    std::vector<long long> counts(config.weights.size());
    long long assigned = 0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        counts[k] = std::llround(config.weights[k] * static_cast<double>(n));
        assigned += counts[k];
    }
    counts[0] += n - assigned;
    if (counts[0] < 0) throw ConfigError("weights leave no samples for class 1 after rounding");
    return {counts.begin(), counts.end()};
}

namespace {

std::vector<std::vector<double>> draw_centers(const SynthConfig& c, std::mt19937_64& rng) {
    const std::size_t n_clusters = c.clusters_per_class * static_cast<std::size_t>(c.n_classes);
    const std::size_t dim = c.n_informative;
    std::vector<std::vector<bool>> vertices;
    vertices.reserve(n_clusters);

    if (dim <= 20) {
        // Enumerate every vertex and take a seeded shuffle prefix.
        std::vector<std::uint32_t> codes(std::size_t{1} << dim);
        std::iota(codes.begin(), codes.end(), 0u);
        for (std::size_t i = 0; i < n_clusters; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, codes.size() - 1);
            std::swap(codes[i], codes[pick(rng)]);
            std::vector<bool> v(dim);
            for (std::size_t b = 0; b < dim; ++b) v[b] = ((codes[i] >> b) & 1u) != 0;
            vertices.push_back(std::move(v));
        }
    } else {
        // Too many vertices to enumerate; rejection-sample distinct ones.
        std::set<std::vector<bool>> seen;
        std::bernoulli_distribution coin(0.5);
        while (vertices.size() < n_clusters) {
            std::vector<bool> v(dim);
            for (std::size_t b = 0; b < dim; ++b) v[b] = coin(rng);
            if (seen.insert(v).second) vertices.push_back(std::move(v));
        }
    }

    std::vector<std::vector<double>> centers;
    centers.reserve(n_clusters);
    for (const auto& v : vertices) {
        std::vector<double> center(dim);
        for (std::size_t b = 0; b < dim; ++b) center[b] = v[b] ? c.class_sep : -c.class_sep;
        centers.push_back(std::move(center));
    }
    return centers;
}

}  // namespace

std::vector<std::vector<double>> synthetic_centers(const SynthConfig& config) {
    config.validate();
    std::mt19937_64 rng(config.seed);
    return draw_centers(config, rng);
}

Dataset generate_synthetic(const SynthConfig& config) {
    const auto counts = synthetic_class_counts(config);
    std::mt19937_64 rng(config.seed);
    const auto centers = draw_centers(config, rng);
    std::normal_distribution<double> noise(0.0, 1.0);

    const std::size_t n = config.n_samples;
    const std::size_t d = config.n_features;
    std::vector<double> x;
    x.reserve(n * d);
    std::vector<int> y;
    y.reserve(n);
    for (std::size_t k = 0; k < counts.size(); ++k) {
        for (std::size_t s = 0; s < counts[k]; ++s) {
            const auto& center = centers[k * config.clusters_per_class + s % config.clusters_per_class];
            for (std::size_t j = 0; j < d; ++j) {
                const double base = j < config.n_informative ? center[j] : 0.0;
                x.push_back(base + noise(rng));
            }
            y.push_back(static_cast<int>(k) + 1);
        }
    }

    // Interleave the classes so row order carries no label information.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    Dataset grouped(std::move(x), d, std::move(y), config.n_classes);
    return grouped.subset(order);
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cell += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                cell += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            cells.push_back(std::move(cell));
            cell.clear();
        } else {
            cell += ch;
        }
    }
    cells.push_back(std::move(cell));
    return cells;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

bool parse_int(const std::string& s, long long& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path, const std::string& label_column) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line) || trim(line).empty()) {
        throw LoadError(path.string() + ": empty file");
    }
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    auto header = split_csv_line(line);
    for (auto& h : header) h = trim(h);
    const auto label_it = std::find(header.begin(), header.end(), label_column);
    if (label_it == header.end()) {
        throw LoadError(path.string() + ": no column named '" + label_column + "'");
    }
    const std::size_t label_col = static_cast<std::size_t>(label_it - header.begin());
    const std::size_t d = header.size() - 1;
    if (d < 1) throw LoadError(path.string() + ": no feature columns");

    std::vector<double> x;
    std::vector<std::string> tokens;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        ++row;
        auto cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            throw LoadError(path.string() + ": row " + std::to_string(row) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(header.size()));
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const std::string cell = trim(cells[c]);
            if (c == label_col) {
                if (cell.empty()) {
                    throw LoadError(path.string() + ": row " + std::to_string(row) +
                                    ", column '" + header[c] + "': blank label");
                }
                tokens.push_back(cell);
                continue;
            }
            double v = 0.0;
            if (!parse_double(cell, v)) {
                throw LoadError(path.string() + ": row " + std::to_string(row) + ", column '" +
                                header[c] + "': " +
                                (cell.empty() ? std::string("blank cell") : "non-numeric value '" + cell + "'"));
            }
            x.push_back(v);
        }
    }
    if (tokens.empty()) throw LoadError(path.string() + ": no data rows");

    // Integer labels forming 1..K are used as-is; anything else is remapped
    // to 1..K in first-appearance order.
    std::vector<int> labels(tokens.size());
    std::vector<std::string> names;
    bool contiguous = true;
    long long max_label = 0;
    std::set<long long> distinct;
    for (const auto& t : tokens) {
        long long v = 0;
        if (!parse_int(t, v) || v < 1) {
            contiguous = false;
            break;
        }
        distinct.insert(v);
        max_label = std::max(max_label, v);
    }
    contiguous = contiguous && static_cast<long long>(distinct.size()) == max_label;
    int k = 0;
    if (contiguous) {
        k = static_cast<int>(max_label);
        for (std::size_t i = 0; i < tokens.size(); ++i) labels[i] = std::stoi(tokens[i]);
    } else {
        std::unordered_map<std::string, int> index;
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            auto [it, inserted] = index.emplace(tokens[i], static_cast<int>(names.size()) + 1);
            if (inserted) names.push_back(tokens[i]);
            labels[i] = it->second;
        }
        k = static_cast<int>(names.size());
    }
    if (k < 2) throw LoadError(path.string() + ": label column has fewer than two classes");
    return Dataset(std::move(x), d, std::move(labels), k, std::move(names));
}

namespace {

std::string format_real(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

void save_csv(const Dataset& ds, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    std::string buf;
    for (std::size_t j = 0; j < ds.num_features(); ++j) {
        buf += 'f';
        buf += std::to_string(j);
        buf += ',';
    }
    buf += "label\n";
    for (std::size_t i = 0; i < ds.size(); ++i) {
        for (double v : ds.row(i)) {
            buf += format_real(v);
            buf += ',';
        }
        const int y = ds.label(i);
        buf += ds.label_names().empty() ? std::to_string(y)
                                        : ds.label_names()[static_cast<std::size_t>(y - 1)];
        buf += '\n';
    }
    out << buf;
    if (!out) throw IoError("failed writing " + path.string());
}

// ---------------------------------------------------------------------------
// Splitting

namespace {

std::vector<std::vector<std::size_t>> indices_by_class(const Dataset& ds) {
    std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(ds.num_classes()));
    for (std::size_t i = 0; i < ds.size(); ++i) {
        by_class[static_cast<std::size_t>(ds.label(i) - 1)].push_back(i);
    }
    return by_class;
}

}  // namespace

std::pair<Dataset, Dataset> train_test_split(const Dataset& ds, double train_fraction,
                                             std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw ContractError("train_fraction must lie in (0, 1)");
    }
    auto by_class = indices_by_class(ds);
    for (std::size_t k = 0; k < by_class.size(); ++k) {
        if (by_class[k].size() < 2) {
            throw DataError("cannot split: class " + std::to_string(k + 1) + " has " +
                            std::to_string(by_class[k].size()) + " sample(s), need at least 2");
        }
    }

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> train_idx;
    std::vector<std::size_t> test_idx;
    for (auto& members : by_class) {
        std::shuffle(members.begin(), members.end(), rng);
        const auto n_k = members.size();
        auto n_train = static_cast<std::size_t>(
            std::floor(train_fraction * static_cast<double>(n_k) + 1e-9));
        n_train = std::clamp<std::size_t>(n_train, 1, n_k - 1);
        train_idx.insert(train_idx.end(), members.begin(), members.begin() + static_cast<long>(n_train));
        test_idx.insert(test_idx.end(), members.begin() + static_cast<long>(n_train), members.end());
    }
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(test_idx.begin(), test_idx.end());
    return {ds.subset(train_idx), ds.subset(test_idx)};
}

FoldAssignment stratified_kfold(const Dataset& ds, int k_folds, std::uint64_t seed) {
    if (k_folds < 1) throw ContractError("k_folds must be positive");
    auto by_class = indices_by_class(ds);
    for (std::size_t k = 0; k < by_class.size(); ++k) {
        if (by_class[k].size() < static_cast<std::size_t>(k_folds)) {
            throw DataError("cannot build " + std::to_string(k_folds) + " folds: class " +
                            std::to_string(k + 1) + " has only " +
                            std::to_string(by_class[k].size()) + " sample(s)");
        }
    }

    FoldAssignment folds;
    folds.k_folds = k_folds;
    folds.fold_of_sample.assign(ds.size(), 0);
    std::mt19937_64 rng(seed);
    std::size_t offset = 0;
    for (auto& members : by_class) {
        std::shuffle(members.begin(), members.end(), rng);
        // Rotating the start keeps overall fold sizes balanced as well.
        for (std::size_t p = 0; p < members.size(); ++p) {
            folds.fold_of_sample[members[p]] = static_cast<int>((offset + p) % static_cast<std::size_t>(k_folds));
        }
        offset += members.size();
    }
    return folds;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> FoldAssignment::indices(int fold) const {
    if (fold < 0 || fold >= k_folds) throw ContractError("fold index out of range");
    std::pair<std::vector<std::size_t>, std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < fold_of_sample.size(); ++i) {
        (fold_of_sample[i] == fold ? out.second : out.first).push_back(i);
    }
    return out;
}

}  // namespace costboost
