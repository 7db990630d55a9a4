#include "mapstab/cli.hpp"

#include "mapstab/documents.hpp"
#include "mapstab/model_spec.hpp"
#include "mapstab/stability.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace mapstab {

namespace {

long parse_integer(const std::string& token)
{
    long value = 0;
    const char* begin = token.data();
    const char* end = token.data() + token.size();
    if (begin != end && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || begin == end) {
        throw EngineError(ErrorCode::Usage, "not an integer: '" + token + "'");
    }
    return value;
}

std::vector<std::string> split(const std::string& text, char separator)
{
    std::vector<std::string> out;
    std::string current;
    for (char c : text) {
        if (c == separator) {
            out.push_back(current);
            current.clear();
        } else if (c != ' ') {
            current += c;
        }
    }
    out.push_back(current);
    return out;
}

Component parse_component(const std::string& text)
{
    Component n;
    for (const auto& token : split(text, ',')) n.push_back(parse_integer(token));
    return n;
}

// Rank one: "0,1,-2" or "-2..3". Higher rank: components separated by ';'.
std::vector<Component> parse_component_list(const std::string& text, std::size_t rank)
{
    std::vector<Component> out;
    if (text.find(';') != std::string::npos || rank != 1) {
        for (const auto& item : split(text, ';')) {
            if (!item.empty()) out.push_back(parse_component(item));
        }
        return out;
    }
    for (const auto& item : split(text, ',')) {
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back({parse_integer(item)});
            continue;
        }
        const long lo = parse_integer(item.substr(0, dots));
        const long hi = parse_integer(item.substr(dots + 2));
        if (hi < lo || hi - lo > 1000) throw EngineError(ErrorCode::Usage, "bad component range '" + item + "'");
        for (long k = lo; k <= hi; ++k) out.push_back({k});
    }
    return out;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw EngineError(ErrorCode::Usage, "cannot read spec file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct Loaded {
    ModelSpec spec;
    CompiledModel model;
    int window = 0;
};

Loaded load(const std::string& path, std::optional<int> window)
{
    Loaded out{parse_model_spec(read_file(path)), {}, 0};
    out.model = compile(out.spec);
    out.window = window.value_or(default_window(out.spec));
    check_window(out.spec, out.model, out.window);
    return out;
}

void require_rank(const Loaded& loaded, const Component& n)
{
    if (n.size() != loaded.model.target->rank()) {
        throw EngineError(ErrorCode::Usage, "component has " + std::to_string(n.size()) + " entries but degree2Basis has " +
                                                std::to_string(loaded.model.target->rank()));
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Rational models of mapping-space components and their stability under covers", "mapstab"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(engine_version));

    std::string format = "json";
    std::string spec_path;
    std::string component_text;
    std::string components_text;
    std::optional<int> window;
    bool based = false;
    long factor = 1;
    std::optional<long> kn;
    std::optional<long> kdn;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--spec", spec_path, "model spec file (JSON)")->required();
        sub->add_option("--window", window, "highest homotopy degree reported");
        sub->add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));
    };
    auto* mapspace = app.add_subcommand("mapspace", "homotopy table of one component");
    common(mapspace);
    mapspace->add_option("--component", component_text, "n1,...,nr")->required()->allow_extra_args(false);
    mapspace->add_flag("--based", based, "based mapping space (fiber of evaluation)");

    auto* stability = app.add_subcommand("stability", "certificate for the degree-d cover between n and d n");
    common(stability);
    stability->add_option("--component", component_text, "n1,...,nr")->required();
    stability->add_option("--factor", factor, "cover degree d >= 1")->required();
    stability->add_option("--kn", kn, "external equivalence range for n");
    stability->add_option("--kdn", kdn, "external equivalence range for d n");

    auto* classify = app.add_subcommand("classify", "partition components into rational types");
    common(classify);
    classify->add_option("--components", components_text, "list, e.g. -2..3 or 0,1,2 or 1,0;0,1")->required();

    std::vector<const char*> argv{"mapstab"};
    for (const auto& a : args) argv.push_back(a.c_str());

    auto fail = [&](ErrorCode code, const std::string& message) {
        err << "error " << error_code_name(code) << ": " << message << "\n";
        if (format != "table") out << finalize_document(error_document(code, message));
        return 1;
    };

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        return fail(ErrorCode::Usage, e.what());
    }

    try {
        nlohmann::ordered_json doc;
        int code = 0;
        if (mapspace->parsed()) {
            const auto loaded = load(spec_path, window);
            const auto n = parse_component(component_text);
            require_rank(loaded, n);
            const auto model = component_model(loaded.model.target, loaded.model.source, n, based);
            doc = table_document(loaded.spec, n, loaded.window, based, linearized_homotopy(model.cdga, loaded.window));
        } else if (stability->parsed()) {
            if (factor < 1) throw EngineError(ErrorCode::Usage, "--factor must be at least 1");
            if (kn.has_value() != kdn.has_value()) throw EngineError(ErrorCode::Usage, "--kn and --kdn go together");
            const auto loaded = load(spec_path, window);
            const auto n = parse_component(component_text);
            require_rank(loaded, n);
            const auto cert = stability_certificate(loaded.model.target, loaded.model.source, n, factor, loaded.window,
                                                    kn, kdn);
            doc = certificate_document(loaded.spec, cert);
            code = cert.valid() ? 0 : 2;
        } else {
            const auto loaded = load(spec_path, window);
            const auto list = parse_component_list(components_text, loaded.model.target->rank());
            if (list.empty()) throw EngineError(ErrorCode::Usage, "empty component list");
            for (const auto& n : list) require_rank(loaded, n);
            doc = classification_document(loaded.spec, list, loaded.window,
                                          classify_components(loaded.model.target, loaded.model.source, list,
                                                              loaded.window));
        }
        const auto text = finalize_document(std::move(doc));
        if (format == "table") {
            out << render_text(nlohmann::ordered_json::parse(text));
        } else {
            out << text;
        }
        return code;
    } catch (const EngineError& e) {
        return fail(e.code(), e.what());
    }
}

}  // namespace mapstab
