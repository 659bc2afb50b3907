#include "matchstick/trace.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace matchstick::trace {

namespace {

using nlohmann::json;

template <class Id>
std::optional<Id> parse_id(std::string_view text, char prefix) {
  if (text.size() < 2 || text[0] != prefix) {
    return std::nullopt;
  }
  std::uint32_t value = 0;
  const char* first = text.data() + 1;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || (text.size() > 2 && text[1] == '0')) {
    return std::nullopt;
  }
  return Id{value};
}

// Records are written by hand: fixed key order, no whitespace, and it is the
// hot path of every compile.
class Writer {
 public:
  explicit Writer(std::string& out) : out_(out) { out_ += '{'; }

  Writer& key(std::string_view k) {
    if (!first_) {
      out_ += ',';
    }
    first_ = false;
    out_ += '"';
    out_ += k;
    out_ += "\":";
    return *this;
  }
  Writer& str(std::string_view k, std::string_view v) {
    key(k);
    quoted(v);
    return *this;
  }
  Writer& num(std::string_view k, std::uint64_t v) {
    key(k);
    out_ += std::to_string(v);
    return *this;
  }
  Writer& boolean(std::string_view k, bool v) {
    key(k);
    out_ += v ? "true" : "false";
    return *this;
  }
  Writer& null(std::string_view k) {
    key(k);
    out_ += "null";
    return *this;
  }
  template <class Id>
  Writer& ids(std::string_view k, const std::vector<Id>& v) {
    key(k);
    out_ += '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i != 0) {
        out_ += ',';
      }
      quoted(to_string(v[i]));
    }
    out_ += ']';
    return *this;
  }
  Writer& coord(std::string_view kx, std::string_view ky, const Coord& c) {
    str(kx, c.x);
    str(ky, c.y);
    return *this;
  }
  void close() { out_ += '}'; }

 private:
  void quoted(std::string_view v) {
    out_ += '"';
    for (char ch : v) {
      if (ch == '"' || ch == '\\') {
        out_ += '\\';
        out_ += ch;
      } else if (static_cast<unsigned char>(ch) < 0x20) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(ch));
        out_ += buf;
      } else {
        out_ += ch;
      }
    }
    out_ += '"';
  }

  std::string& out_;
  bool first_ = true;
};

struct RecordWriter {
  Writer& w;

  void operator()(const op::Given& r) {
    w.str("point", to_string(r.point)).coord("x", "y", r.at);
  }
  void operator()(const op::LayBothEnds& r) {
    w.str("p", to_string(r.p)).str("q", to_string(r.q)).str("stick", to_string(r.stick));
  }
  void operator()(const op::LayFromThrough& r) {
    w.str("p", to_string(r.p)).str("q", to_string(r.q)).str("stick", to_string(r.stick));
    w.str("far", to_string(r.far)).coord("x", "y", r.at);
  }
  void operator()(const op::LayThroughBoth& r) {
    w.str("p", to_string(r.p)).str("q", to_string(r.q)).str("t", r.t.to_string());
    w.str("stick", to_string(r.stick));
    w.str("a", to_string(r.a)).coord("ax", "ay", r.a_at);
    w.str("b", to_string(r.b)).coord("bx", "by", r.b_at);
  }
  void operator()(const op::LayFree& r) {
    w.str("p", to_string(r.p));
    if (r.ref) {
      w.str("ref", to_string(*r.ref));
    } else {
      w.null("ref");
    }
    w.str("angle", r.angle).str("stick", to_string(r.stick));
    w.str("far", to_string(r.far)).coord("x", "y", r.at);
  }
  void operator()(const op::ChoosePoint& r) {
    w.str("stick", to_string(r.stick)).str("t", r.t.to_string()).boolean("interior", r.interior);
    w.str("point", to_string(r.point)).coord("x", "y", r.at);
  }
  void operator()(const op::Compass& r) {
    w.str("center", to_string(r.center));
    if (r.sticks.size() == 1) {
      w.str("stick", to_string(r.sticks.front()));
    } else {
      w.ids("stick", r.sticks);
    }
    w.num("pick", r.pick).num("candidates", r.candidates);
    w.str("point", to_string(r.point)).coord("x", "y", r.at);
  }
  void operator()(const op::CompassCircles& r) {
    w.ids("centers", r.centers).num("pick", r.pick);
    w.str("point", to_string(r.point)).coord("x", "y", r.at);
  }
  void operator()(const op::MarkCrossing& r) {
    w.str("s1", to_string(r.s1)).str("s2", to_string(r.s2));
    w.str("point", to_string(r.point)).coord("x", "y", r.at);
  }
  void operator()(const op::CmpUnit& r) {
    w.str("p", to_string(r.p)).str("q", to_string(r.q)).str("result", numerics::to_string(r.result));
  }
  void operator()(const op::Output& r) {
    w.str("name", r.name).str("kind", r.kind).ids("points", r.points);
  }
  void operator()(const op::IntersectNote& r) {
    w.str("name", r.name).num("count", r.points.size()).ids("points", r.points);
  }
};

// -- reading ---------------------------------------------------------------

[[noreturn]] void fail(const std::string& message) { throw Error(ErrorCode::ParseError, message); }

const json& field(const json& obj, const char* k) {
  auto it = obj.find(k);
  if (it == obj.end()) {
    fail(std::string("missing field '") + k + "'");
  }
  return *it;
}

std::string text_field(const json& obj, const char* k) {
  const json& v = field(obj, k);
  if (!v.is_string()) {
    fail(std::string("field '") + k + "' must be a string");
  }
  return v.get<std::string>();
}

std::uint64_t uint_field(const json& obj, const char* k) {
  const json& v = field(obj, k);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    fail(std::string("field '") + k + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::uint32_t small_field(const json& obj, const char* k) {
  const std::uint64_t v = uint_field(obj, k);
  if (v > 0xffffffffULL) {
    fail(std::string("field '") + k + "' out of range");
  }
  return static_cast<std::uint32_t>(v);
}

PointId point_of(const std::string& text) {
  auto id = parse_point_id(text);
  if (!id) {
    fail("bad point id '" + text + "'");
  }
  return *id;
}

StickId stick_of(const std::string& text) {
  auto id = parse_stick_id(text);
  if (!id) {
    fail("bad stick id '" + text + "'");
  }
  return *id;
}

PointId point_field(const json& obj, const char* k) { return point_of(text_field(obj, k)); }
StickId stick_field(const json& obj, const char* k) { return stick_of(text_field(obj, k)); }

Coord coord_fields(const json& obj, const char* kx, const char* ky) {
  return {text_field(obj, kx), text_field(obj, ky)};
}

numerics::Ratio ratio_field(const json& obj, const char* k) {
  try {
    return numerics::Ratio::parse(text_field(obj, k));
  } catch (const Error& e) {
    fail(std::string("field '") + k + "': " + e.detail());
  }
}

template <class Id, class Conv>
std::vector<Id> id_list(const json& v, const char* k, Conv conv) {
  if (!v.is_array()) {
    fail(std::string("field '") + k + "' must be an array");
  }
  std::vector<Id> out;
  for (const json& item : v) {
    if (!item.is_string()) {
      fail(std::string("field '") + k + "' must hold id strings");
    }
    out.push_back(conv(item.get<std::string>()));
  }
  return out;
}

Instruction parse_instruction(const std::string& name, const json& obj) {
  if (name == "given") {
    return op::Given{point_field(obj, "point"), coord_fields(obj, "x", "y")};
  }
  if (name == "lay_both_ends") {
    return op::LayBothEnds{point_field(obj, "p"), point_field(obj, "q"), stick_field(obj, "stick")};
  }
  if (name == "lay_from_through") {
    return op::LayFromThrough{point_field(obj, "p"), point_field(obj, "q"), stick_field(obj, "stick"),
                              point_field(obj, "far"), coord_fields(obj, "x", "y")};
  }
  if (name == "lay_through_both") {
    return op::LayThroughBoth{point_field(obj, "p"),          point_field(obj, "q"),
                              ratio_field(obj, "t"),          stick_field(obj, "stick"),
                              point_field(obj, "a"),          coord_fields(obj, "ax", "ay"),
                              point_field(obj, "b"),          coord_fields(obj, "bx", "by")};
  }
  if (name == "lay_free") {
    op::LayFree r;
    r.p = point_field(obj, "p");
    const json& ref = field(obj, "ref");
    if (!ref.is_null()) {
      r.ref = stick_field(obj, "ref");
    }
    r.angle = text_field(obj, "angle");
    r.stick = stick_field(obj, "stick");
    r.far = point_field(obj, "far");
    r.at = coord_fields(obj, "x", "y");
    return r;
  }
  if (name == "choose_point") {
    const json& interior = field(obj, "interior");
    if (!interior.is_boolean()) {
      fail("field 'interior' must be a boolean");
    }
    return op::ChoosePoint{stick_field(obj, "stick"), ratio_field(obj, "t"), interior.get<bool>(),
                           point_field(obj, "point"), coord_fields(obj, "x", "y")};
  }
  if (name == "compass") {
    op::Compass r;
    r.center = point_field(obj, "center");
    const json& stick = field(obj, "stick");
    if (stick.is_string()) {
      r.sticks.push_back(stick_of(stick.get<std::string>()));
    } else {
      r.sticks = id_list<StickId>(stick, "stick", stick_of);
    }
    r.pick = small_field(obj, "pick");
    r.candidates = small_field(obj, "candidates");
    r.point = point_field(obj, "point");
    r.at = coord_fields(obj, "x", "y");
    return r;
  }
  if (name == "compass_circles") {
    return op::CompassCircles{id_list<PointId>(field(obj, "centers"), "centers", point_of),
                              small_field(obj, "pick"), point_field(obj, "point"),
                              coord_fields(obj, "x", "y")};
  }
  if (name == "mark_crossing") {
    return op::MarkCrossing{stick_field(obj, "s1"), stick_field(obj, "s2"), point_field(obj, "point"),
                            coord_fields(obj, "x", "y")};
  }
  if (name == "cmp_unit") {
    const std::string result = text_field(obj, "result");
    auto cmp = numerics::cmp_from_string(result);
    if (!cmp) {
      fail("bad comparison result '" + result + "'");
    }
    return op::CmpUnit{point_field(obj, "p"), point_field(obj, "q"), *cmp};
  }
  if (name == "output") {
    return op::Output{text_field(obj, "name"), text_field(obj, "kind"),
                      id_list<PointId>(field(obj, "points"), "points", point_of)};
  }
  if (name == "intersect") {
    op::IntersectNote r{text_field(obj, "name"),
                        id_list<PointId>(field(obj, "points"), "points", point_of)};
    if (uint_field(obj, "count") != r.points.size()) {
      fail("intersect count does not match its point list");
    }
    return r;
  }
  fail("unknown op '" + name + "'");
}

json parse_object(std::string_view line) {
  json obj = json::parse(line.begin(), line.end(), nullptr, false);
  if (obj.is_discarded() || !obj.is_object()) {
    fail("not a JSON object");
  }
  return obj;
}

}  // namespace

std::string to_string(PointId id) { return "P" + std::to_string(id.value); }
std::string to_string(StickId id) { return "S" + std::to_string(id.value); }
std::optional<PointId> parse_point_id(std::string_view text) { return parse_id<PointId>(text, 'P'); }
std::optional<StickId> parse_stick_id(std::string_view text) { return parse_id<StickId>(text, 'S'); }

std::string_view op_name(const Instruction& ins) {
  static constexpr std::string_view names[] = {
      "given",        "lay_both_ends", "lay_from_through", "lay_through_both",
      "lay_free",     "choose_point",  "compass",          "compass_circles",
      "mark_crossing", "cmp_unit",     "output",           "intersect"};
  static_assert(std::size(names) == std::variant_size_v<Instruction>);
  return names[ins.index()];
}

bool is_primitive(const Instruction& ins) {
  return !std::holds_alternative<op::Given>(ins) && !std::holds_alternative<op::Output>(ins) &&
         !std::holds_alternative<op::IntersectNote>(ins);
}

std::size_t Trace::primitive_count() const {
  std::size_t n = 0;
  for (const Record& r : records) {
    n += is_primitive(r.ins) ? 1 : 0;
  }
  return n;
}

Header make_header(const Config& config) {
  Header h;
  h.precision_bits = config.precision_bits;
  h.max_precision_bits = config.max_precision_bits;
  h.epsilon_eq = config.epsilon_eq;
  h.epsilon_cmp = config.epsilon_cmp;
  h.seed = config.seed;
  h.choice_strategy = std::string(to_string(config.choice_strategy));
  h.output_digits = config.output_digits;
  return h;
}

Config config_of(const Header& h) {
  Config c;
  c.precision_bits = h.precision_bits;
  c.max_precision_bits = h.max_precision_bits;
  c.epsilon_eq = h.epsilon_eq;
  c.epsilon_cmp = h.epsilon_cmp;
  c.seed = h.seed;
  c.output_digits = h.output_digits;
  try {
    c.choice_strategy = parse_choice_strategy(h.choice_strategy);
    c.validate();
  } catch (const Error& e) {
    fail("header: " + e.detail());
  }
  return c;
}

std::string write_header(const Header& h) {
  std::string out;
  Writer w(out);
  w.num("version", static_cast<std::uint64_t>(h.version));
  w.num("precision_bits", static_cast<std::uint64_t>(h.precision_bits));
  w.num("max_precision_bits", static_cast<std::uint64_t>(h.max_precision_bits));
  w.str("epsilon_eq", h.epsilon_eq).str("epsilon_cmp", h.epsilon_cmp);
  w.num("seed", h.seed).str("choice_strategy", h.choice_strategy);
  w.num("output_digits", static_cast<std::uint64_t>(h.output_digits));
  w.close();
  return out;
}

std::string write_record(const Record& record) {
  std::string out;
  out.reserve(160);
  Writer w(out);
  w.num("seq", record.seq).str("op", op_name(record.ins));
  std::visit(RecordWriter{w}, record.ins);
  w.close();
  return out;
}

std::string serialize(const Trace& trace) {
  std::string out = write_header(trace.header);
  out += '\n';
  for (const Record& r : trace.records) {
    out += write_record(r);
    out += '\n';
  }
  return out;
}

Header parse_header(std::string_view line) {
  const json obj = parse_object(line);
  Header h;
  h.version = static_cast<int>(uint_field(obj, "version"));
  if (h.version != 1) {
    fail("unsupported trace version " + std::to_string(h.version));
  }
  h.precision_bits = static_cast<numerics::Bits>(uint_field(obj, "precision_bits"));
  h.max_precision_bits = static_cast<numerics::Bits>(uint_field(obj, "max_precision_bits"));
  h.epsilon_eq = text_field(obj, "epsilon_eq");
  h.epsilon_cmp = text_field(obj, "epsilon_cmp");
  h.seed = uint_field(obj, "seed");
  h.choice_strategy = text_field(obj, "choice_strategy");
  h.output_digits = static_cast<int>(uint_field(obj, "output_digits"));
  return h;
}

Record parse_record(std::string_view line) {
  const json obj = parse_object(line);
  Record r;
  r.seq = uint_field(obj, "seq");
  r.ins = parse_instruction(text_field(obj, "op"), obj);
  return r;
}

Trace parse(std::string_view text) {
  Trace trace;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    const bool terminated = end != std::string_view::npos;
    if (!terminated) {
      end = text.size();
    }
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!terminated) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": truncated record");
    }
    if (line.empty()) {
      continue;
    }
    try {
      if (!have_header) {
        trace.header = parse_header(line);
        have_header = true;
      } else {
        trace.records.push_back(parse_record(line));
      }
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + e.detail());
    }
  }
  if (!have_header) {
    throw Error(ErrorCode::ParseError, "empty trace: header missing");
  }
  return trace;
}

Trace read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot read '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void write_file(const std::string& path, const Trace& trace) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  }
  out << serialize(trace);
  if (!out) {
    throw Error(ErrorCode::IoError, "write failed for '" + path + "'");
  }
}

}  // namespace matchstick::trace
