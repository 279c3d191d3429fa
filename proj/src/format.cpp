#include "cvrg/format.hpp"

#include "cvrg/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cvrg {

namespace {

constexpr int kFormatVersion = 1;

void put(std::string& out, double x)
{
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.17g", x);
    out += buf.data();
}

void put(std::string& out, const Point& p)
{
    put(out, p.x());
    out += ' ';
    put(out, p.y());
}

// Splits a document into whitespace-separated tokens per line, skipping blank
// lines and '#' comments.
class LineReader {
public:
    explicit LineReader(std::string_view text)
    {
        int number = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const std::size_t end = std::min(text.find('\n', pos), text.size());
            std::string_view line = text.substr(pos, end - pos);
            ++number;
            if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
            std::vector<std::string_view> tokens;
            std::size_t i = 0;
            while (i < line.size()) {
                while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
                std::size_t j = i;
                while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
                if (j > i) tokens.push_back(line.substr(i, j - i));
                i = j;
            }
            if (!tokens.empty()) lines_.push_back({number, std::move(tokens)});
            if (end == text.size()) break;
            pos = end + 1;
        }
    }

    struct Line {
        int number;
        std::vector<std::string_view> tokens;

        std::size_t size() const { return tokens.size(); }

        void expect_size(std::size_t n) const
        {
            if (tokens.size() != n)
                throw ParseError(number, "'" + std::string(tokens[0]) + "' expects " + std::to_string(n - 1) +
                                             " fields, got " + std::to_string(tokens.size() - 1));
        }

        void expect_word(std::size_t i, std::string_view word) const
        {
            if (i >= tokens.size() || tokens[i] != word)
                throw ParseError(number, "field " + std::to_string(i) + ": expected '" + std::string(word) + "'");
        }

        double real(std::size_t i) const
        {
            if (i >= tokens.size()) throw ParseError(number, "missing field " + std::to_string(i));
            double value = 0.0;
            const auto tok = tokens[i];
            const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
            if (ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(value))
                throw ParseError(number, "field " + std::to_string(i) + ": '" + std::string(tok) + "' is not a finite number");
            return value;
        }

        long long integer(std::size_t i) const
        {
            if (i >= tokens.size()) throw ParseError(number, "missing field " + std::to_string(i));
            long long value = 0;
            const auto tok = tokens[i];
            const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
            if (ec != std::errc{} || ptr != tok.data() + tok.size())
                throw ParseError(number, "field " + std::to_string(i) + ": '" + std::string(tok) + "' is not an integer");
            return value;
        }

        long long count(std::size_t i) const
        {
            const long long v = integer(i);
            if (v < 0) throw ParseError(number, "field " + std::to_string(i) + ": negative count");
            return v;
        }

        Point point(std::size_t i) const { return Point(real(i), real(i + 1)); }
    };

    const Line& next(std::string_view keyword)
    {
        if (index_ >= lines_.size())
            throw ParseError(lines_.empty() ? 1 : lines_.back().number + 1, "expected '" + std::string(keyword) + "'");
        const Line& line = lines_[index_++];
        if (line.tokens[0] != keyword)
            throw ParseError(line.number, "expected '" + std::string(keyword) + "', found '" + std::string(line.tokens[0]) + "'");
        return line;
    }

    bool peek(std::string_view keyword) const { return index_ < lines_.size() && lines_[index_].tokens[0] == keyword; }

    void finish()
    {
        if (index_ < lines_.size()) throw ParseError(lines_[index_].number, "unexpected content after 'end'");
    }

private:
    std::vector<Line> lines_;
    std::size_t index_ = 0;
};

void expect_header(LineReader& reader, std::string_view magic)
{
    const auto& line = reader.next(magic);
    line.expect_size(2);
    if (line.integer(1) != kFormatVersion)
        throw ParseError(line.number, "unsupported version " + std::string(line.tokens[1]));
}

}  // namespace

std::string emit_instance(const Instance& instance)
{
    std::string out = "cvrg-instance " + std::to_string(kFormatVersion) + "\n";
    out += "workspace ";
    put(out, instance.workspace.origin);
    out += ' ';
    put(out, instance.workspace.width);
    out += ' ';
    put(out, instance.workspace.height);
    out += "\ndepot ";
    put(out, instance.depot);
    out += "\ncapacity ";
    put(out, instance.capacity);
    out += "\ncustomers " + std::to_string(instance.customers.size()) + "\n";
    for (std::size_t i = 0; i < instance.customers.size(); ++i) {
        const Customer& c = instance.customers[i];
        out += "customer " + std::to_string(i) + " weight ";
        put(out, c.weight);
        out += " vertices " + std::to_string(c.region.size());
        for (const Point& v : c.region.vertices()) {
            out += ' ';
            put(out, v);
        }
        out += '\n';
    }
    out += "precedence " + std::to_string(instance.precedence.edges().size()) + "\n";
    for (const auto& [above, below] : instance.precedence.edges())
        out += "above " + std::to_string(above) + " " + std::to_string(below) + "\n";
    for (const auto& [key, value] : instance.provenance) out += "meta " + key + " " + value + "\n";
    out += "end\n";
    return out;
}

Instance parse_instance(std::string_view text)
{
    LineReader reader(text);
    expect_header(reader, "cvrg-instance");
    Instance instance;

    const auto& ws = reader.next("workspace");
    ws.expect_size(5);
    instance.workspace = {ws.point(1), ws.real(3), ws.real(4)};
    if (!(instance.workspace.width > 0.0 && instance.workspace.height > 0.0))
        throw ParseError(ws.number, "workspace size must be positive");

    const auto& depot = reader.next("depot");
    depot.expect_size(3);
    instance.depot = depot.point(1);
    if (!instance.workspace.contains(instance.depot)) throw ParseError(depot.number, "depot outside the workspace");

    const auto& cap = reader.next("capacity");
    cap.expect_size(2);
    instance.capacity = cap.real(1);
    if (instance.capacity != 1.0) throw ParseError(cap.number, "capacity must be 1");

    const auto& header = reader.next("customers");
    header.expect_size(2);
    const long long n = header.count(1);
    for (long long i = 0; i < n; ++i) {
        const auto& line = reader.next("customer");
        if (line.size() < 6) throw ParseError(line.number, "customer line is too short");
        if (line.integer(1) != i) throw ParseError(line.number, "field 1: expected customer index " + std::to_string(i));
        line.expect_word(2, "weight");
        const double weight = line.real(3);
        if (!(weight > 0.0 && weight <= 1.0)) throw ParseError(line.number, "field 3: weight outside (0, 1]");
        line.expect_word(4, "vertices");
        const long long m = line.count(5);
        if (m < 1) throw ParseError(line.number, "field 5: region needs at least one vertex");
        line.expect_size(6 + 2 * static_cast<std::size_t>(m));
        std::vector<Point> vertices;
        for (long long v = 0; v < m; ++v) {
            const Point p = line.point(6 + 2 * static_cast<std::size_t>(v));
            if (!instance.workspace.contains(p))
                throw ParseError(line.number, "field " + std::to_string(6 + 2 * v) + ": vertex outside the workspace");
            vertices.push_back(p);
        }
        try {
            instance.customers.push_back({Polygon(std::move(vertices)), weight});
        } catch (const std::invalid_argument& e) {
            throw ParseError(line.number, std::string("region: ") + e.what());
        }
    }

    const auto& prec = reader.next("precedence");
    prec.expect_size(2);
    const long long m = prec.count(1);
    std::vector<std::pair<int, int>> edges;
    for (long long e = 0; e < m; ++e) {
        const auto& line = reader.next("above");
        line.expect_size(3);
        const long long a = line.integer(1);
        const long long b = line.integer(2);
        if (a < 0 || a >= n) throw ParseError(line.number, "field 1: customer index out of range");
        if (b < 0 || b >= n) throw ParseError(line.number, "field 2: customer index out of range");
        edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
    if (!edges.empty()) {
        try {
            instance.precedence = PrecedenceDag(static_cast<int>(n), std::move(edges));
        } catch (const std::invalid_argument& e) {
            throw ParseError(prec.number, e.what());
        }
    }

    while (reader.peek("meta")) {
        const auto& line = reader.next("meta");
        line.expect_size(3);
        instance.provenance[std::string(line.tokens[1])] = std::string(line.tokens[2]);
    }
    reader.next("end");
    reader.finish();
    return instance;
}

std::string emit_solution(const Solution& solution)
{
    std::string out = "cvrg-solution " + std::to_string(kFormatVersion) + "\n";
    out += "solver " + std::string(to_string(solution.solver)) + "\n";
    out += "total_cost ";
    put(out, solution.total_cost);
    out += "\nruntime_seconds ";
    put(out, solution.stats.runtime_seconds);
    out += "\nsubsets_evaluated " + std::to_string(solution.stats.subsets_evaluated);
    out += "\nsweeps " + std::to_string(solution.stats.sweeps) + "\n";
    if (solution.stats.unrefined_cost) {
        out += "unrefined_cost ";
        put(out, *solution.stats.unrefined_cost);
        out += '\n';
    }
    out += "tours " + std::to_string(solution.tours.size()) + "\n";
    for (std::size_t t = 0; t < solution.tours.size(); ++t) {
        const Tour& tour = solution.tours[t];
        out += "tour " + std::to_string(t) + " length ";
        put(out, tour.length);
        out += " visits " + std::to_string(tour.customer_ids.size()) + "\n";
        for (std::size_t j = 0; j < tour.customer_ids.size(); ++j) {
            out += "visit " + std::to_string(tour.customer_ids[j]) + " ";
            put(out, tour.delivery_points[j]);
            out += '\n';
        }
    }
    out += "end\n";
    return out;
}

Solution parse_solution(std::string_view text)
{
    LineReader reader(text);
    expect_header(reader, "cvrg-solution");
    Solution solution;

    const auto& solver = reader.next("solver");
    solver.expect_size(2);
    const auto kind = parse_solver_kind(solver.tokens[1]);
    if (!kind) throw ParseError(solver.number, "field 1: unknown solver '" + std::string(solver.tokens[1]) + "'");
    solution.solver = *kind;

    const auto& total = reader.next("total_cost");
    total.expect_size(2);
    solution.total_cost = total.real(1);
    const auto& runtime = reader.next("runtime_seconds");
    runtime.expect_size(2);
    solution.stats.runtime_seconds = runtime.real(1);
    const auto& subsets = reader.next("subsets_evaluated");
    subsets.expect_size(2);
    solution.stats.subsets_evaluated = static_cast<std::uint64_t>(subsets.count(1));
    const auto& sweeps = reader.next("sweeps");
    sweeps.expect_size(2);
    solution.stats.sweeps = static_cast<std::uint64_t>(sweeps.count(1));
    if (reader.peek("unrefined_cost")) {
        const auto& line = reader.next("unrefined_cost");
        line.expect_size(2);
        solution.stats.unrefined_cost = line.real(1);
    }

    const auto& tours = reader.next("tours");
    tours.expect_size(2);
    const long long t_count = tours.count(1);
    for (long long t = 0; t < t_count; ++t) {
        const auto& line = reader.next("tour");
        line.expect_size(6);
        if (line.integer(1) != t) throw ParseError(line.number, "field 1: expected tour index " + std::to_string(t));
        line.expect_word(2, "length");
        Tour tour;
        tour.length = line.real(3);
        line.expect_word(4, "visits");
        const long long k = line.count(5);
        for (long long j = 0; j < k; ++j) {
            const auto& visit = reader.next("visit");
            visit.expect_size(4);
            tour.customer_ids.push_back(static_cast<int>(visit.integer(1)));
            tour.delivery_points.push_back(visit.point(2));
        }
        solution.tours.push_back(std::move(tour));
    }
    reader.next("end");
    reader.finish();
    return solution;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view contents)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace cvrg
