#include "cvrp/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cvrp/rng.hpp"

namespace cvrp {

namespace {

using nlohmann::json;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double euclid(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    const double dx = a[0] - b[0];
    const double dy = a[1] - b[1];
    return std::sqrt(dx * dx + dy * dy);
}

}  // namespace

Instance parse_instance(const std::string& text, bool rounded) {
    std::istringstream in(text);
    std::string line;

    std::string name = "unnamed";
    std::string type;
    std::string weight_type;
    std::string weight_format;
    int dimension = -1;
    std::int64_t capacity = -1;

    std::vector<std::array<double, 2>> coords;
    std::vector<double> matrix;
    std::vector<std::int64_t> demands;
    std::vector<char> have_demand;
    std::vector<int> depots;

    auto require_dimension = [&](const char* where) {
        if (dimension <= 0) throw ParseError(std::string(where) + " before DIMENSION");
    };

    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;

        std::string keyword = line;
        std::string value;
        const auto colon = line.find(':');
        if (colon != std::string::npos) {
            keyword = trim(line.substr(0, colon));
            value = trim(line.substr(colon + 1));
        }

        if (keyword == "NAME") {
            name = value;
        } else if (keyword == "COMMENT") {
            // ignored
        } else if (keyword == "TYPE") {
            type = value;
            if (type != "CVRP") throw ParseError("unsupported TYPE: " + type);
        } else if (keyword == "DIMENSION") {
            dimension = std::stoi(value);
            if (dimension < 1) throw ParseError("DIMENSION must be at least 1");
        } else if (keyword == "CAPACITY") {
            capacity = std::stoll(value);
        } else if (keyword == "EDGE_WEIGHT_TYPE") {
            weight_type = value;
            if (weight_type != "EUC_2D" && weight_type != "EXPLICIT")
                throw ParseError("unsupported EDGE_WEIGHT_TYPE: " + weight_type);
        } else if (keyword == "EDGE_WEIGHT_FORMAT") {
            weight_format = value;
            if (weight_format != "FULL_MATRIX" && weight_format != "LOWER_ROW")
                throw ParseError("unsupported EDGE_WEIGHT_FORMAT: " + weight_format);
        } else if (keyword == "NODE_COORD_SECTION") {
            require_dimension("NODE_COORD_SECTION");
            coords.assign(dimension, {0.0, 0.0});
            for (int i = 0; i < dimension; ++i) {
                int id;
                double x, y;
                if (!(in >> id >> x >> y)) throw ParseError("truncated NODE_COORD_SECTION");
                if (id < 1 || id > dimension) throw ParseError("bad node id in NODE_COORD_SECTION");
                coords[id - 1] = {x, y};
            }
        } else if (keyword == "EDGE_WEIGHT_SECTION") {
            require_dimension("EDGE_WEIGHT_SECTION");
            std::size_t count;
            if (weight_format == "FULL_MATRIX")
                count = static_cast<std::size_t>(dimension) * dimension;
            else if (weight_format == "LOWER_ROW")
                count = static_cast<std::size_t>(dimension) * (dimension - 1) / 2;
            else
                throw ParseError("EDGE_WEIGHT_SECTION requires EDGE_WEIGHT_FORMAT");
            matrix.resize(count);
            for (std::size_t i = 0; i < count; ++i)
                if (!(in >> matrix[i])) throw ParseError("truncated EDGE_WEIGHT_SECTION");
        } else if (keyword == "DEMAND_SECTION") {
            require_dimension("DEMAND_SECTION");
            demands.assign(dimension, 0);
            have_demand.assign(dimension, 0);
            for (int i = 0; i < dimension; ++i) {
                int id;
                std::int64_t d;
                if (!(in >> id >> d)) throw ParseError("dimension mismatch in DEMAND_SECTION");
                if (id < 1 || id > dimension) throw ParseError("bad node id in DEMAND_SECTION");
                demands[id - 1] = d;
                have_demand[id - 1] = 1;
            }
        } else if (keyword == "DEPOT_SECTION") {
            int id;
            while (in >> id && id != -1) depots.push_back(id);
        } else if (keyword == "EOF") {
            break;
        } else {
            throw ParseError("unknown keyword: " + keyword);
        }
    }

    if (dimension <= 0) throw ParseError("missing DIMENSION");
    if (capacity < 1) throw ParseError("missing or invalid CAPACITY");
    if (weight_type.empty()) throw ParseError("missing EDGE_WEIGHT_TYPE");
    if (weight_type == "EUC_2D" && static_cast<int>(coords.size()) != dimension)
        throw ParseError("EUC_2D requires NODE_COORD_SECTION with DIMENSION rows");
    if (weight_type == "EXPLICIT" && matrix.empty())
        throw ParseError("EXPLICIT requires EDGE_WEIGHT_SECTION");
    if (have_demand.empty()) throw ParseError("missing DEMAND_SECTION");
    for (int i = 0; i < dimension; ++i)
        if (!have_demand[i]) throw ParseError("dimension mismatch in DEMAND_SECTION");
    if (depots.size() != 1) throw ParseError("expected exactly one depot");
    const int depot = depots[0];
    if (depot < 1 || depot > dimension) throw ParseError("depot id out of range");
    if (demands[depot - 1] != 0) throw ParseError("depot demand must be 0");

    // Remap: depot -> 0, remaining nodes keep their relative order.
    std::vector<int> file_of_node(dimension);  // internal id -> file index (0-based)
    file_of_node[0] = depot - 1;
    int next = 1;
    for (int i = 0; i < dimension; ++i)
        if (i != depot - 1) file_of_node[next++] = i;

    Instance inst;
    inst.name = name;
    inst.capacity = capacity;
    inst.rounded_costs = rounded || weight_type == "EXPLICIT";
    inst.demand.assign(dimension, 0);
    for (int v = 1; v < dimension; ++v) inst.demand[v] = demands[file_of_node[v]];
    inst.cost.assign(static_cast<std::size_t>(dimension) * dimension, 0.0);

    auto explicit_weight = [&](int a, int b) -> double {
        if (weight_format == "FULL_MATRIX") return matrix[static_cast<std::size_t>(a) * dimension + b];
        if (a == b) return 0.0;
        const int i = std::max(a, b);
        const int j = std::min(a, b);
        // LOWER_ROW: row i (0-based) lists d(i,0..i-1).
        return matrix[static_cast<std::size_t>(i) * (i - 1) / 2 + j];
    };

    for (int u = 0; u < dimension; ++u)
        for (int v = 0; v < dimension; ++v) {
            if (u == v) continue;
            double w;
            if (weight_type == "EUC_2D") {
                w = euclid(coords[file_of_node[u]], coords[file_of_node[v]]);
                if (rounded) w = std::floor(w + 0.5);
            } else {
                w = explicit_weight(file_of_node[u], file_of_node[v]);
            }
            inst.c(u, v) = w;
        }
    if (weight_type == "EUC_2D") {
        inst.coords.resize(dimension);
        for (int v = 0; v < dimension; ++v) inst.coords[v] = coords[file_of_node[v]];
        inst.rounded_costs = rounded;
    }

    return inst;
}

Instance load_instance(const std::string& path, bool rounded) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str(), rounded);
}

std::string format_instance(const Instance& inst) {
    std::ostringstream out;
    out.precision(17);
    const int dim = inst.num_nodes();
    out << "NAME : " << inst.name << "\n";
    out << "TYPE : CVRP\n";
    out << "DIMENSION : " << dim << "\n";
    if (!inst.coords.empty()) {
        out << "EDGE_WEIGHT_TYPE : EUC_2D\n";
        out << "CAPACITY : " << inst.capacity << "\n";
        out << "NODE_COORD_SECTION\n";
        for (int v = 0; v < dim; ++v)
            out << (v + 1) << " " << inst.coords[v][0] << " " << inst.coords[v][1] << "\n";
    } else {
        out << "EDGE_WEIGHT_TYPE : EXPLICIT\n";
        out << "EDGE_WEIGHT_FORMAT : FULL_MATRIX\n";
        out << "CAPACITY : " << inst.capacity << "\n";
        out << "EDGE_WEIGHT_SECTION\n";
        for (int u = 0; u < dim; ++u) {
            for (int v = 0; v < dim; ++v) out << (v ? " " : "") << inst.c(u, v);
            out << "\n";
        }
    }
    out << "DEMAND_SECTION\n";
    for (int v = 0; v < dim; ++v) out << (v + 1) << " " << inst.demand[v] << "\n";
    out << "DEPOT_SECTION\n1\n-1\nEOF\n";
    return out.str();
}

std::string write_solution(const Solution& sol, const SolutionMeta& meta) {
    json j;
    j["instance"] = meta.instance;
    j["algorithm"] = meta.algorithm;
    j["seed"] = meta.seed;
    j["tours"] = json::array();
    for (const auto& t : sol.tours) j["tours"].push_back(t.clients);
    j["total_cost"] = sol.total_cost;
    json bounds;
    bounds["D"] = meta.d_bound;
    if (meta.lp_opt) bounds["lp_opt"] = *meta.lp_opt;
    if (meta.oracle_opt) bounds["oracle_opt"] = *meta.oracle_opt;
    j["bounds"] = bounds;
    return j.dump(2) + "\n";
}

ReadSolution read_solution(const std::string& text, const Instance& inst) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("solution JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("tours") || !j["tours"].is_array())
        throw std::runtime_error("solution JSON: missing tours array");

    ReadSolution result;
    result.meta.instance = j.value("instance", "");
    result.meta.algorithm = j.value("algorithm", "");
    result.meta.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("bounds") && j["bounds"].is_object()) {
        result.meta.d_bound = j["bounds"].value("D", 0.0);
        if (j["bounds"].contains("lp_opt")) result.meta.lp_opt = j["bounds"]["lp_opt"].get<double>();
        if (j["bounds"].contains("oracle_opt"))
            result.meta.oracle_opt = j["bounds"]["oracle_opt"].get<double>();
    }

    std::vector<char> seen(inst.num_nodes(), 0);
    for (const auto& jt : j["tours"]) {
        if (!jt.is_array()) throw std::runtime_error("solution JSON: tour is not an array");
        std::vector<int> clients;
        for (const auto& jv : jt) {
            if (!jv.is_number_integer()) throw std::runtime_error("solution JSON: bad client id");
            const int v = jv.get<int>();
            if (v < 1 || v > inst.num_clients())
                throw std::runtime_error("solution JSON: unknown client " + std::to_string(v));
            if (seen[v])
                throw std::runtime_error("solution JSON: duplicate client " + std::to_string(v));
            seen[v] = 1;
            clients.push_back(v);
        }
        result.solution.add(Tour::of(inst, clients));
    }
    if (j.contains("total_cost")) {
        const double stored = j["total_cost"].get<double>();
        if (std::abs(stored - result.solution.total_cost) >
            1e-6 * std::max(1.0, std::abs(result.solution.total_cost)))
            throw std::runtime_error("solution JSON: stored total_cost does not match tours");
    }
    return result;
}

Instance generate_instance(const GeneratorConfig& cfg) {
    if (cfg.n < 0) throw std::invalid_argument("generate: n must be nonnegative");
    if (cfg.capacity < 1) throw std::invalid_argument("generate: capacity must be positive");
    Rng rng(cfg.seed);

    const int dim = cfg.n + 1;
    Instance inst;
    std::ostringstream name;
    name << "rnd-n" << cfg.n << "-q" << cfg.capacity << "-s" << cfg.seed;
    inst.name = name.str();
    inst.capacity = cfg.capacity;
    inst.demand.assign(dim, 0);
    inst.coords.assign(dim, {0.0, 0.0});
    for (int v = 0; v < dim; ++v) {
        inst.coords[v][0] = static_cast<double>(rng.next_int(0, cfg.box));
        inst.coords[v][1] = static_cast<double>(rng.next_int(0, cfg.box));
    }
    const std::int64_t hi =
        cfg.dist == DemandDist::uniform ? cfg.capacity : std::max<std::int64_t>(1, cfg.capacity / 3);
    for (int v = 1; v < dim; ++v) inst.demand[v] = rng.next_int(1, hi);

    inst.cost.assign(static_cast<std::size_t>(dim) * dim, 0.0);
    for (int u = 0; u < dim; ++u)
        for (int v = u + 1; v < dim; ++v)
            inst.c(u, v) = inst.c(v, u) = euclid(inst.coords[u], inst.coords[v]);
    return inst;
}

}  // namespace cvrp
