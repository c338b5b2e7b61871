#include "gcf/gcode.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gcf/errors.hpp"

namespace gcf {

std::size_t GcodeProgram::movement_count() const {
    std::size_t n = 0;
    for (const Instruction& inst : instructions)
        if (inst.is_movement()) ++n;
    return n;
}

std::size_t Skeleton::total_points() const {
    std::size_t n = 0;
    for (const Layer& layer : layers) n += layer.points.size();
    return n;
}

std::vector<Vec2> Skeleton::all_points() const {
    std::vector<Vec2> out;
    out.reserve(total_points());
    for (const Layer& layer : layers)
        out.insert(out.end(), layer.points.begin(), layer.points.end());
    return out;
}

std::string format_number(double value) {
    if (value == 0.0)
        value = 0.0;  // normalize -0
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
    return std::string(buf, res.ptr);
}

namespace {

bool parse_double(std::string_view text, double& out) {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto res = std::from_chars(first, last, out);
    return res.ec == std::errc{} && res.ptr == last;
}

// G0/G00 -> 0, G1/G01 -> 1, anything else -> -1.
int movement_code(std::string_view token) {
    if (token.size() < 2 || (token[0] != 'G' && token[0] != 'g'))
        return -1;
    std::string_view digits = token.substr(1);
    for (char c : digits)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return -1;
    while (digits.size() > 1 && digits.front() == '0')
        digits.remove_prefix(1);
    if (digits == "0")
        return 0;
    if (digits == "1")
        return 1;
    return -1;
}

std::vector<std::string_view> split_whitespace(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start)
            tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

}  // namespace

GcodeProgram parse_program(const std::string& text, std::string source_name) {
    GcodeProgram program;
    program.source_name = std::move(source_name);

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line;
        if (eol == std::string::npos) {
            line = std::string_view(text).substr(pos);
            pos = text.size();
        } else {
            line = std::string_view(text).substr(pos, eol - pos);
            pos = eol + 1;
        }
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);

        std::string_view code = line;
        if (std::size_t semi = code.find(';'); semi != std::string_view::npos)
            code = code.substr(0, semi);

        const auto tokens = split_whitespace(code);
        if (tokens.empty())
            continue;  // blank or comment-only line

        const int move = movement_code(tokens[0]);
        if (move < 0) {
            Instruction other;
            other.command = Command::Other;
            other.raw = std::string(line);
            program.instructions.push_back(std::move(other));
            continue;
        }

        Instruction inst;
        inst.command = move == 0 ? Command::G0 : Command::G1;
        inst.raw = std::string(line);
        bool unknown_param = false;
        for (std::size_t t = 1; t < tokens.size(); ++t) {
            const std::string_view tok = tokens[t];
            const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(tok[0])));
            std::optional<double>* slot = nullptr;
            switch (letter) {
                case 'X': slot = &inst.x; break;
                case 'Y': slot = &inst.y; break;
                case 'Z': slot = &inst.z; break;
                case 'E': slot = &inst.e; break;
                case 'F': slot = &inst.f; break;
                default: unknown_param = true; break;
            }
            if (unknown_param)
                break;
            double value = 0.0;
            if (tok.size() < 2 || !parse_double(tok.substr(1), value)) {
                std::ostringstream msg;
                msg << program.source_name << ":" << line_no
                    << ": malformed numeric parameter '" << std::string(tok) << "'";
                throw ParseError(msg.str(), line_no);
            }
            *slot = value;
        }
        if (unknown_param) {
            // Lines with parameters this toolkit does not model are kept
            // verbatim rather than half-decoded.
            Instruction other;
            other.command = Command::Other;
            other.raw = std::string(line);
            program.instructions.push_back(std::move(other));
            continue;
        }
        program.instructions.push_back(std::move(inst));
    }
    return program;
}

GcodeProgram parse_gcode_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open G-code file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_program(buf.str(), path);
}

std::string emit_program(const GcodeProgram& program) {
    std::string out;
    for (const Instruction& inst : program.instructions) {
        if (inst.command == Command::Other) {
            out += inst.raw;
        } else {
            out += inst.command == Command::G0 ? "G0" : "G1";
            if (inst.x) { out += " X"; out += format_number(*inst.x); }
            if (inst.y) { out += " Y"; out += format_number(*inst.y); }
            if (inst.z) { out += " Z"; out += format_number(*inst.z); }
            if (inst.e) { out += " E"; out += format_number(*inst.e); }
            if (inst.f) { out += " F"; out += format_number(*inst.f); }
        }
        out += '\n';
    }
    return out;
}

void write_gcode_file(const GcodeProgram& program, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError("cannot write G-code file: " + path);
    out << emit_program(program);
}

Skeleton extract_skeleton(const GcodeProgram& program) {
    Skeleton skeleton;
    double x = 0.0, y = 0.0, z = 0.0;
    for (const Instruction& inst : program.instructions) {
        if (!inst.is_movement())
            continue;
        if (inst.x) x = *inst.x;
        if (inst.y) y = *inst.y;
        if (inst.z) z = *inst.z;
        if (inst.command != Command::G1)
            continue;  // G0 travels update position only
        if (skeleton.layers.empty() || skeleton.layers.back().z != z)
            skeleton.layers.push_back(Layer{z, {}});
        skeleton.layers.back().points.push_back({x, y});
    }
    return skeleton;
}

}  // namespace gcf
