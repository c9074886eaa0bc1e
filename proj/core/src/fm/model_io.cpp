#include "blogrec/fm/model_io.hpp"

#include <fmt/format.h>

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "blogrec/error.hpp"

namespace blogrec::fm {
namespace {

constexpr const char* kMagic = "blogrec-fm";
constexpr int kVersion = 1;

void write_block(std::ostream& out, const char* tag, std::span<const double> values) {
  out << tag;
  for (double v : values) out << ' ' << fmt::format("{:.12g}", v);
  out << '\n';
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next line, which must start with `tag`; the remainder is returned as a stream.
  std::istringstream expect(const std::string& tag) {
    std::string line;
    if (!std::getline(in_, line)) fail("unexpected end of file, wanted '" + tag + "'");
    ++line_;
    std::istringstream fields(line);
    std::string head;
    fields >> head;
    if (head != tag) fail("expected '" + tag + "', found '" + head + "'");
    return fields;
  }

  [[noreturn]] void fail(const std::string& why) const { throw ParseError("<model>", line_, why); }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

template <typename T>
T read_one(std::istringstream& fields, const LineReader& reader, const char* what) {
  T value{};
  if (!(fields >> value)) reader.fail(std::string("bad ") + what);
  return value;
}

void read_block(std::istringstream fields, std::span<double> out, const LineReader& reader,
                const char* what) {
  for (double& v : out) v = read_one<double>(fields, reader, what);
  std::string extra;
  if (fields >> extra) reader.fail(std::string("too many values in ") + what);
}

}  // namespace

void write_model(std::ostream& out, const FeatureSpace& space, const FmModel& model) {
  if (space.total() != model.num_features()) {
    throw ContractError("feature space and model disagree on feature count");
  }
  out << kMagic << ' ' << kVersion << '\n';
  out << "encoding " << to_string(space.encoding()) << '\n';
  out << "space " << space.num_users() << ' ' << space.num_blogs() << ' ' << space.num_apps() << '\n';
  out << "offsets " << space.user_offset() << ' ' << space.blog_offset() << ' ' << space.app_offset()
      << '\n';
  out << "features " << model.num_features() << '\n';
  out << "factors " << model.factors() << '\n';
  const double bias = model.bias();
  write_block(out, "w0", std::span<const double>(&bias, 1));
  write_block(out, "w", model.linear());
  write_block(out, "z", model.factor_table());
}

StoredModel read_model(std::istream& in) {
  LineReader reader(in);
  {
    auto f = reader.expect(kMagic);
    if (read_one<int>(f, reader, "version") != kVersion) reader.fail("unsupported model version");
  }
  Encoding encoding;
  {
    auto f = reader.expect("encoding");
    std::string name = read_one<std::string>(f, reader, "encoding");
    try {
      encoding = parse_encoding(name);
    } catch (const ConfigError&) {
      reader.fail("unknown encoding '" + name + "'");
    }
  }
  auto sf = reader.expect("space");
  const auto m = read_one<std::size_t>(sf, reader, "user count");
  const auto n = read_one<std::size_t>(sf, reader, "blog count");
  const auto c = read_one<std::size_t>(sf, reader, "app count");
  if (encoding == Encoding::kMf && c != 0) reader.fail("MF model with apps");
  FeatureSpace space = encoding == Encoding::kMf ? FeatureSpace::mf(m, n) : FeatureSpace::app_fm(m, n, c);
  {
    auto f = reader.expect("offsets");
    const auto u = read_one<std::size_t>(f, reader, "offset");
    const auto b = read_one<std::size_t>(f, reader, "offset");
    const auto a = read_one<std::size_t>(f, reader, "offset");
    if (u != space.user_offset() || b != space.blog_offset() || a != space.app_offset()) {
      reader.fail("offsets inconsistent with space");
    }
  }
  auto ff = reader.expect("features");
  const auto features = read_one<std::size_t>(ff, reader, "feature count");
  if (features != space.total()) reader.fail("feature count inconsistent with space");
  auto kf = reader.expect("factors");
  const auto k = read_one<std::size_t>(kf, reader, "factor count");
  if (k < 1) reader.fail("factor count must be >= 1");

  FmModel model(features, k);
  read_block(reader.expect("w0"), std::span<double>(&model.bias(), 1), reader, "w0");
  read_block(reader.expect("w"), model.linear(), reader, "w");
  read_block(reader.expect("z"), model.factor_table(), reader, "z");
  return {space, std::move(model)};
}

void save_model(const std::filesystem::path& path, const FeatureSpace& space, const FmModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  write_model(out, space, model);
}

StoredModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return read_model(in);
}

}  // namespace blogrec::fm
