#include "cvent/report.hpp"

#include <cstdio>
#include <map>
#include <sstream>

namespace cvent {

bool RunRecord::any_violated() const {
    for (const auto& r : reports)
        if (r.violated) return true;
    return false;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string join_doubles(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_double(v[i]);
    }
    return out;
}

std::vector<double> split_doubles(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw invalid_input("bad number list: " + s);
        out.push_back(v);
    }
    return out;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

std::string to_text(const RunRecord& rec) {
    std::ostringstream os;
    os << "format = " << rec.format << '\n';
    os << "version = " << rec.version << '\n';
    os << "state = " << rec.state_spec << '\n';
    os << "theta_step = " << format_double(rec.theta_step) << '\n';
    os << "a_values = " << join_doubles(rec.a_values) << '\n';
    os << "grid_points = " << rec.grid_points << '\n';
    os << "grid_span = " << (rec.grid_span > 0 ? format_double(rec.grid_span) : "auto") << '\n';
    if (rec.seed) os << "seed = " << *rec.seed << '\n';
    os << "wall_time_s = " << format_double(rec.wall_time_s) << '\n';
    for (const auto& r : rec.reports) {
        os << "report = " << criterion_name(r.criterion) << '\n';
        if (r.has_settings) {
            os << "  theta1 = " << format_double(r.settings.theta1) << '\n';
            os << "  theta2 = " << format_double(r.settings.theta2) << '\n';
            os << "  a1 = " << format_double(r.settings.a1) << '\n';
            os << "  a2 = " << format_double(r.settings.a2) << '\n';
            os << "  sign = " << (r.settings.sign > 0 ? "+" : "-") << '\n';
        }
        os << "  lhs = " << format_double(r.lhs) << '\n';
        os << "  rhs = " << format_double(r.rhs) << '\n';
        os << "  margin = " << format_double(r.margin) << '\n';
        os << "  violated = " << (r.violated ? "true" : "false") << '\n';
        os << "  refinement_delta = " << (r.has_delta ? format_double(r.refinement_delta) : "none")
           << '\n';
        for (const auto& [k, v] : r.entropies)
            os << "  entropy " << k << " = " << format_double(v) << '\n';
        os << "end" << '\n';
    }
    for (const auto& e : rec.errors) os << "error = " << e << '\n';
    return os.str();
}

RunRecord parse_report(const std::string& text) {
    RunRecord rec;
    rec.a_values.clear();
    std::istringstream is(text);
    std::string line;
    CriterionReport* cur = nullptr;
    while (std::getline(is, line)) {
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t == "end") {
            cur = nullptr;
            continue;
        }
        const auto eq = t.find(" = ");
        if (eq == std::string::npos) throw invalid_input("report: malformed line: " + line);
        const std::string key = t.substr(0, eq);
        const std::string val = t.substr(eq + 3);
        if (key == "report") {
            const auto c = criterion_from_name(val);
            if (!c) throw invalid_input("report: unknown criterion " + val);
            rec.reports.emplace_back();
            cur = &rec.reports.back();
            cur->criterion = *c;
            cur->has_settings = false; // set on first settings key
            continue;
        }
        if (cur) {
            if (key == "theta1") { cur->settings.theta1 = std::stod(val); cur->has_settings = true; }
            else if (key == "theta2") cur->settings.theta2 = std::stod(val);
            else if (key == "a1") cur->settings.a1 = std::stod(val);
            else if (key == "a2") cur->settings.a2 = std::stod(val);
            else if (key == "sign") cur->settings.sign = (val == "+" ? +1 : -1);
            else if (key == "lhs") cur->lhs = std::stod(val);
            else if (key == "rhs") cur->rhs = std::stod(val);
            else if (key == "margin") cur->margin = std::stod(val);
            else if (key == "violated") cur->violated = (val == "true");
            else if (key == "refinement_delta") {
                cur->has_delta = (val != "none");
                if (cur->has_delta) cur->refinement_delta = std::stod(val);
            } else if (key.rfind("entropy ", 0) == 0)
                cur->entropies[key.substr(8)] = std::stod(val);
            else
                throw invalid_input("report: unknown report key " + key);
            continue;
        }
        if (key == "format") rec.format = val;
        else if (key == "version") rec.version = val;
        else if (key == "state") rec.state_spec = val;
        else if (key == "theta_step") rec.theta_step = std::stod(val);
        else if (key == "a_values") rec.a_values = split_doubles(val);
        else if (key == "grid_points") rec.grid_points = std::stoi(val);
        else if (key == "grid_span") rec.grid_span = (val == "auto" ? 0.0 : std::stod(val));
        else if (key == "seed") rec.seed = std::stoull(val);
        else if (key == "wall_time_s") rec.wall_time_s = std::stod(val);
        else if (key == "error") rec.errors.push_back(val);
        else throw invalid_input("report: unknown key " + key);
    }
    return rec;
}

namespace {

std::map<std::string, std::string> parse_params(const std::string& s) {
    std::map<std::string, std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw invalid_input("state spec: expected key=value in " + s);
        out[trim(tok.substr(0, eq))] = trim(tok.substr(eq + 1));
    }
    return out;
}

double want_double(const std::map<std::string, std::string>& p, const std::string& k) {
    const auto it = p.find(k);
    if (it == p.end()) throw invalid_input("state spec: missing parameter " + k);
    return std::stod(it->second);
}

} // namespace

ParsedState parse_state_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const auto params =
        colon == std::string::npos ? std::map<std::string, std::string>{}
                                   : parse_params(spec.substr(colon + 1));
    ParsedState out;
    if (name == "phi") {
        out.state = phi_state();
    } else if (name == "noon") {
        out.state = noon_state(static_cast<int>(want_double(params, "N")));
    } else if (name == "eta") {
        out.state = eta_state(want_double(params, "sp"), want_double(params, "sm"));
    } else if (name == "tmsv") {
        out.state = two_mode_squeezed(want_double(params, "r"));
    } else if (name == "cat") {
        out.state = cat_ensemble(want_double(params, "alpha"), want_double(params, "p"));
    } else if (name == "random") {
        const int d = static_cast<int>(want_double(params, "D"));
        const auto it = params.find("seed");
        const std::uint64_t seed = it == params.end() ? 0 : std::stoull(it->second);
        out.state = random_haar_state(d, seed);
        out.seed = seed;
    } else {
        throw invalid_input("state spec: unknown state '" + name + "'");
    }
    return out;
}

} // namespace cvent
