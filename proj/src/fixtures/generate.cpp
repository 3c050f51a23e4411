// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "corpus_forge/fixtures/generate.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

#include "corpus_forge/fixtures/pii_cases.hpp"

namespace corpus_forge::fixtures {
namespace fs = std::filesystem;

void FixtureSpec::validate() const {
    if (size == 0) throw std::invalid_argument("fixture size must be positive");
    if (kind == FixtureKind::OverlapPairs) {
        if (!jaccard) throw std::invalid_argument("overlap pairs need a target jaccard");
        if (*jaccard < 0.0 || *jaccard > 1.0) throw std::invalid_argument("jaccard must be in [0, 1]");
    } else if (jaccard) {
        throw std::invalid_argument("jaccard only applies to overlap pairs");
    }
}

std::uint64_t Rng::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::size_t Rng::below(std::size_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below(0)");
    const auto m = static_cast<std::uint64_t>(n);
    const std::uint64_t floor = (0 - m) % m;  // reject the biased low range
    for (;;) {
        auto r = next();
        if (r >= floor) return static_cast<std::size_t>(r % m);
    }
}

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

namespace {

std::string hex(std::uint64_t v, int width) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%0*llx", width, static_cast<unsigned long long>(v));
    return buf;
}

std::string uuid(Rng& rng) {
    auto a = rng.next();
    auto b = rng.next();
    return "urn:uuid:" + hex(a >> 32, 8) + "-" + hex((a >> 16) & 0xffff, 4) + "-4" + hex(a & 0xfff, 3) + "-" +
           hex(0x8000 | ((b >> 48) & 0x3fff), 4) + "-" + hex(b & 0xffffffffffffULL, 12);
}

std::string iso_day(Rng& rng, int first_year, int years) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", first_year + static_cast<int>(rng.below(static_cast<std::size_t>(years))),
                  1 + static_cast<int>(rng.below(12)), 1 + static_cast<int>(rng.below(28)));
    return buf;
}

std::string warc_date(Rng& rng) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "T%02d:%02d:%02dZ", static_cast<int>(rng.below(24)), static_cast<int>(rng.below(60)),
                  static_cast<int>(rng.below(60)));
    return iso_day(rng, 2019, 5) + buf;
}

// ---- Portuguese prose ---------------------------------------------------------

// Word-level slots keep shared 5-grams between unrelated documents rare.
const std::vector<std::string> kActors{
    "a câmara",     "o presidente", "a associação", "o diretor",    "a equipa",       "o sindicato",
    "a escola",     "o hospital",   "a cooperativa", "o museu",     "a universidade", "o clube",
    "a orquestra",  "o tribunal",   "a junta",       "o ministério", "a empresa",     "o comando",
    "a biblioteca", "o teatro",
};

const std::vector<std::string> kCities{
    "Lisboa", "Porto",   "Braga",    "Coimbra",  "Faro",    "Évora",  "Viseu",    "Aveiro",  "Leiria",
    "Setúbal", "Guarda", "Bragança", "Beja",     "Portalegre", "Santarém", "Tomar", "Chaves",  "Lamego",
    "Tavira", "Sines",   "Elvas",    "Mirandela", "Covilhã", "Peniche", "Olhão",
};

const std::vector<std::string> kVerbs{
    "apresentou", "discutiu", "aprovou", "anunciou", "reviu",     "propôs",   "concluiu",
    "analisou",   "criticou", "preparou", "divulgou", "defendeu", "adiou",    "financiou",
    "lançou",     "suspendeu", "retomou", "avaliou",  "publicou", "terminou",
};

const std::vector<std::string> kThings{
    "o plano",     "a proposta",  "o relatório", "o programa",  "a campanha", "o projeto",
    "o estudo",    "o regulamento", "a obra",    "o concurso",  "a reforma",  "o inquérito",
    "o orçamento", "a parceria",  "o protocolo", "a exposição", "o festival", "a revisão",
    "o calendário", "o roteiro",  "a estratégia", "o acordo",   "a candidatura", "o contrato",
};

const std::vector<std::string> kQualities{
    "municipal", "regional",   "importante", "sustentável", "cultural", "local",  "nacional", "social",
    "urgente",   "ambiental",  "digital",    "simples",     "anual",    "comum",  "especial", "provisório",
};

const std::vector<std::string> kBeneficiaries{
    "os moradores", "as escolas",     "os idosos",    "as famílias", "os agricultores", "os estudantes",
    "os pescadores", "as associações", "os turistas", "os doentes",  "os comerciantes", "as crianças",
    "os artistas",  "os ciclistas",   "os utentes",
};

const std::vector<std::string> kMonths{"janeiro", "fevereiro", "março",    "abril",   "maio",     "junho",
                                       "julho",   "agosto",    "setembro", "outubro", "novembro", "dezembro"};

const std::vector<std::string> kTails{
    "sem grandes surpresas", "com amplo apoio",  "apesar das críticas", "depois de longa discussão",
    "segundo fonte oficial", "com algum atraso", "por unanimidade",     "após vários meses",
    "para alívio geral",     "com boa adesão",   "perante muitos olhares", "como era esperado",
};

const std::vector<std::string> kSites{"jornaldonorte.pt", "noticiasdaregiao.pt", "diariodocentro.pt",
                                      "gazetadoalgarve.pt", "correiodosul.pt", "vozdaserra.pt"};

std::string capitalized(std::string s) {
    if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
    return s;
}

std::string thing_phrase(Rng& rng) { return rng.pick(kThings) + " " + rng.pick(kQualities); }

std::string sentence(Rng& rng) {
    std::string s = capitalized(rng.pick(kActors)) + " de " + rng.pick(kCities) + " " + rng.pick(kVerbs) + " " +
                    thing_phrase(rng) + " para " + rng.pick(kBeneficiaries) + " em " + rng.pick(kMonths) + " de " +
                    std::to_string(2015 + rng.below(10));
    if (rng.below(2)) s += ", " + rng.pick(kTails);
    return s + ".";
}

// Sentences that do not repeat within one document.
std::vector<std::string> unique_sentences(Rng& rng, std::size_t n, std::set<std::string>& used) {
    std::vector<std::string> out;
    while (out.size() < n) {
        auto s = sentence(rng);
        if (used.insert(s).second) out.push_back(std::move(s));
    }
    return out;
}

std::string join_lines(const std::vector<std::string>& xs, std::string_view sep = "\n") {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += sep;
        out += xs[i];
    }
    return out;
}

std::string prose(Rng& rng, std::size_t paragraphs, std::size_t min_sentences, std::size_t max_sentences) {
    std::set<std::string> used;
    std::vector<std::string> paras;
    for (std::size_t p = 0; p < paragraphs; ++p) {
        auto n = min_sentences + rng.below(max_sentences - min_sentences + 1);
        paras.push_back(join_lines(unique_sentences(rng, n, used)));
    }
    return join_lines(paras, "\n\n");
}

const std::vector<std::string> kEnglish{
    "The city council approved a new plan for the historic centre on Tuesday evening.",
    "Researchers at the university published their findings about coastal erosion this week.",
    "Local volunteers collected more than two tonnes of food for families in need.",
    "The museum will open its new wing to the public at the beginning of next month.",
    "Heavy rain is expected across the northern coast for the rest of the weekend.",
    "The football club confirmed that its new stadium will be ready before the season.",
    "Students returned to school after a long summer break with new timetables.",
    "A group of engineers presented a proposal to modernise the regional railway line.",
};

// ---- WARC ----------------------------------------------------------------------

WarcFixtureRecord make_record(std::string type, std::string id, std::string date, std::optional<std::string> uri,
                              std::string content_type, std::string payload) {
    WarcFixtureRecord r;
    r.type = std::move(type);
    r.record_id = std::move(id);
    r.date = std::move(date);
    r.target_uri = std::move(uri);
    r.content_type = std::move(content_type);
    r.payload = std::move(payload);
    r.headers.emplace_back("WARC-Type", r.type);
    r.headers.emplace_back("WARC-Record-ID", "<" + r.record_id + ">");
    r.headers.emplace_back("WARC-Date", r.date);
    if (r.target_uri) r.headers.emplace_back("WARC-Target-URI", *r.target_uri);
    r.headers.emplace_back("Content-Type", r.content_type);
    r.headers.emplace_back("Content-Length", std::to_string(r.payload.size()));
    return r;
}

std::string http_response(std::string_view mime, std::string_view body) {
    return "HTTP/1.1 200 OK\r\nContent-Type: " + std::string(mime) + "; charset=utf-8\r\nContent-Length: " +
           std::to_string(body.size()) + "\r\n\r\n" + std::string(body);
}

std::string html_page(std::string_view title, const std::string& text) {
    std::string body = "<!DOCTYPE html>\n<html><head><title>" + std::string(title) +
                       "</title><style>p{margin:0}</style></head>\n<body>\n<nav><a href=\"/\">Início</a> | <a "
                       "href=\"/sobre\">Sobre</a></nav>\n<article>\n";
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string::npos) nl = text.size();
        auto line = text.substr(pos, nl - pos);
        if (!line.empty()) body += "<p>" + line + "</p>\n";
        pos = nl + 1;
    }
    body += "</article>\n<footer>Todos os direitos reservados.</footer>\n<script>var x = 1;</script>\n</body></html>\n";
    return body;
}

WarcFixtureRecord request_record(Rng& rng, const std::string& uri, const std::string& date) {
    auto host = uri.substr(uri.find("://") + 3);
    host = host.substr(0, host.find('/'));
    return make_record("request", uuid(rng), date, uri, "application/http; msgtype=request",
                       "GET / HTTP/1.1\r\nHost: " + host + "\r\nUser-Agent: fixture-crawler/1.0\r\n\r\n");
}

WarcFixtureRecord metadata_record(Rng& rng, const std::string& uri, const std::string& date) {
    return make_record("metadata", uuid(rng), date, uri, "application/warc-fields",
                       "fetchTimeMs: " + std::to_string(20 + rng.below(900)) + "\r\noutlinks: 3\r\n");
}

void write_bytes(const fs::path& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

// One gzip member per record, the usual layout of .warc.gz files.
std::string gzip_member(std::string_view data) {
    z_stream zs{};
    if (deflateInit2(&zs, Z_DEFAULT_COMPRESSION, Z_DEFLATED, 16 + MAX_WBITS, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
        throw std::runtime_error("deflateInit2 failed");
    }
    std::string out(deflateBound(&zs, static_cast<uLong>(data.size())), '\0');
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
    zs.avail_in = static_cast<uInt>(data.size());
    zs.next_out = reinterpret_cast<Bytef*>(out.data());
    zs.avail_out = static_cast<uInt>(out.size());
    int rc = deflate(&zs, Z_FINISH);
    out.resize(zs.total_out);
    deflateEnd(&zs);
    if (rc != Z_STREAM_END) throw std::runtime_error("deflate failed");
    return out;
}

void write_jsonl(const fs::path& path, const std::vector<FJson>& rows) {
    std::string s;
    for (const auto& r : rows) {
        s += r.dump();
        s += '\n';
    }
    write_bytes(path, s);
}

std::size_t word_count(std::string_view s) {
    std::size_t n = 0;
    bool in = false;
    for (char c : s) {
        bool w = c == ' ' || c == '\n' || c == '\t' || c == '\r';
        if (!w && !in) ++n;
        in = !w;
    }
    return n;
}

FJson message(std::string_view role, std::string content) {
    FJson m = FJson::object();
    m["role"] = role;
    m["content"] = std::move(content);
    return m;
}

FJson entry(std::string id, std::string source, FJson messages, std::optional<double> score) {
    std::size_t tokens = 0;
    for (const auto& m : messages) tokens += word_count(m["content"].get<std::string>());
    FJson e = FJson::object();
    e["id"] = std::move(id);
    e["source"] = std::move(source);
    e["messages"] = std::move(messages);
    e["lang"] = "por";
    if (score) e["quality_score"] = *score;
    e["tokens"] = tokens;
    return e;
}

const std::vector<std::string> kFiller{
    "casa", "rio",   "pedra", "livro", "tempo", "mar",   "ponte", "praça", "vento",  "árvore",
    "sol",  "campo", "porta", "janela", "luz",  "terra", "barco", "serra", "cidade", "estrada",
};

std::string words(Rng& rng, std::size_t n) {
    std::string s;
    for (std::size_t i = 0; i < n; ++i) {
        if (i) s += ' ';
        s += rng.pick(kFiller);
    }
    return s;
}

}  // namespace

std::string serialize_record(const WarcFixtureRecord& r) {
    std::string out = "WARC/1.1\r\n";
    for (const auto& [k, v] : r.headers) out += k + ": " + v + "\r\n";
    out += "\r\n";
    out += r.payload;
    out += "\r\n\r\n";
    return out;
}

WarcFixture warc_minimal(std::size_t size, std::uint64_t seed) {
    Rng rng(seed);
    WarcFixture fx;
    for (std::size_t i = 0; i < size; ++i) {
        auto uri = "https://www." + rng.pick(kSites) + "/artigo/" + std::to_string(i);
        auto date = warc_date(rng);
        switch (i % 4) {
            case 0:
                fx.records.push_back(make_record("response", uuid(rng), date, uri, "application/http; msgtype=response",
                                                 http_response("text/html", html_page("Notícia", prose(rng, 1, 3, 5)))));
                break;
            case 1:
                fx.records.push_back(make_record("response", uuid(rng), date, uri, "text/plain", prose(rng, 2, 2, 3)));
                break;
            case 2:
                fx.records.push_back(request_record(rng, uri, date));
                break;
            default:
                fx.records.push_back(metadata_record(rng, uri, date));
                break;
        }
        fx.bytes += serialize_record(fx.records.back());
    }
    fx.complete_records = fx.records.size();
    return fx;
}

WarcFixture warc_truncated(std::size_t size, std::uint64_t seed) {
    if (size == 0) throw std::invalid_argument("warc_truncated needs at least one record");
    WarcFixture fx = warc_minimal(size, seed);
    auto last = serialize_record(fx.records.back());
    auto head = last.find("\r\n\r\n") + 4;
    // Keep the header and half the payload of the last record.
    fx.bytes.resize(fx.bytes.size() - last.size() + head + fx.records.back().payload.size() / 2);
    fx.complete_records = size - 1;
    fx.truncated = true;
    return fx;
}

FJson doc_to_json(const FixtureDoc& d) {
    FJson j = FJson::object();
    j["id"] = d.id;
    if (d.url) j["url"] = *d.url;
    if (d.date) j["date"] = *d.date;
    j["text"] = d.text;
    if (!d.annotations.empty()) {
        FJson a = FJson::object();
        for (const auto& [k, v] : d.annotations) a[k] = v;
        j["annotations"] = std::move(a);
    }
    return j;
}

std::string portuguese_paragraph(Rng& rng, std::size_t sentences) {
    std::set<std::string> used;
    return join_lines(unique_sentences(rng, sentences, used));
}

std::vector<FixtureDoc> portuguese_paragraphs(std::size_t size, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<FixtureDoc> out;
    for (std::size_t i = 0; i < size; ++i) {
        FixtureDoc d;
        char id[32];
        std::snprintf(id, sizeof id, "pt-%05zu", i);
        d.id = id;
        d.url = "https://www." + rng.pick(kSites) + "/artigo/" + std::to_string(i);
        d.date = iso_day(rng, 2019, 5);
        d.text = prose(rng, 2 + rng.below(3), 3, 6);
        out.push_back(std::move(d));
    }
    return out;
}

std::vector<std::string> repetition_texts(std::size_t size, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < size; ++i) {
        std::string t;
        switch (i % 14) {
            case 0:  // clean
                t = prose(rng, 2 + rng.below(2), 3, 5);
                break;
            case 1: {  // repeated lines
                std::set<std::string> used;
                auto s = unique_sentences(rng, 4, used);
                std::vector<std::string> lines;
                for (std::size_t k = 0; k < 3 + rng.below(4); ++k) lines.push_back(s[k % 2]);
                lines.insert(lines.end(), s.begin() + 2, s.end());
                t = join_lines(lines);
                break;
            }
            case 2: {  // repeated paragraphs
                auto p = portuguese_paragraph(rng, 3);
                auto q = portuguese_paragraph(rng, 2);
                t = p + "\n\n" + q + "\n\n" + p + "\n\n" + p;
                break;
            }
            case 3: {  // bigram spam
                t = portuguese_paragraph(rng, 2) + "\n";
                for (std::size_t k = 0; k < 20 + rng.below(20); ++k) t += "compre agora ";
                break;
            }
            case 4: {  // long n-gram repeated inside prose
                auto s = sentence(rng);
                t = portuguese_paragraph(rng, 2) + "\n" + s + " " + s + " " + s;
                break;
            }
            case 5: {  // bullet list
                std::vector<std::string> lines;
                for (std::size_t k = 0; k < 8 + rng.below(8); ++k) lines.push_back("• " + thing_phrase(rng));
                if (rng.below(2)) lines.push_back(sentence(rng));
                t = join_lines(lines);
                break;
            }
            case 6: {  // ellipses
                std::vector<std::string> lines;
                for (std::size_t k = 0; k < 6; ++k) {
                    auto s = sentence(rng);
                    if (k % 2 == 0) s = s.substr(0, s.size() - 1) + (rng.below(2) ? "..." : "…");
                    lines.push_back(s);
                }
                t = join_lines(lines);
                break;
            }
            case 7: {  // symbol runs
                t = portuguese_paragraph(rng, 3) + "\n";
                for (std::size_t k = 0; k < 10 + rng.below(20); ++k) t += "#tag" + std::to_string(k) + " ";
                break;
            }
            case 8: {  // short lines
                std::vector<std::string> lines;
                for (std::size_t k = 0; k < 20; ++k) lines.push_back(rng.pick(kFiller) + " " + rng.pick(kFiller));
                t = join_lines(lines);
                break;
            }
            case 9: {  // english
                std::vector<std::string> lines;
                for (std::size_t k = 0; k < 6; ++k) lines.push_back(kEnglish[(i + k) % kEnglish.size()]);
                t = join_lines(lines);
                break;
            }
            case 10:  // too short
                t = sentence(rng);
                break;
            case 11: {  // no punctuation, numbers and symbols
                std::vector<std::string> lines;
                for (std::size_t k = 0; k < 12; ++k) {
                    lines.push_back(words(rng, 6) + " " + std::to_string(rng.below(10000)) + " -- %% " + words(rng, 3));
                }
                t = join_lines(lines);
                break;
            }
            case 12: {  // blank-line noise and CRLF
                t = "\n\n" + portuguese_paragraph(rng, 3) + "\r\n\r\n\n" + portuguese_paragraph(rng, 3) + "\n\n\n";
                break;
            }
            default:
                t = "";
                break;
        }
        out.push_back(std::move(t));
    }
    return out;
}

OverlapPair overlap_pair(double jaccard, std::size_t union_size, std::uint64_t seed, std::uint64_t index) {
    if (union_size == 0) throw std::invalid_argument("union_size must be positive");
    if (jaccard < 0.0 || jaccard > 1.0) throw std::invalid_argument("jaccard must be in [0, 1]");
    Rng rng(seed ^ (index * 0xd1b54a32d192ed03ULL));
    OverlapPair p;
    p.requested = jaccard;
    p.shared = static_cast<std::size_t>(std::llround(jaccard * static_cast<double>(union_size)));
    std::size_t rest = union_size - p.shared;
    p.only_a = rest / 2;
    p.only_b = rest - p.only_a;
    p.exact = static_cast<double>(p.shared) / static_cast<double>(union_size);
    auto prefix = hex(rng.next(), 16);
    std::size_t k = 0;
    auto token = [&] { return prefix + "_" + std::to_string(k++); };
    for (std::size_t i = 0; i < p.shared; ++i) {
        auto t = token();
        p.a.push_back(t);
        p.b.push_back(t);
    }
    for (std::size_t i = 0; i < p.only_a; ++i) p.a.push_back(token());
    for (std::size_t i = 0; i < p.only_b; ++i) p.b.push_back(token());
    std::sort(p.a.begin(), p.a.end());
    std::sort(p.b.begin(), p.b.end());
    return p;
}

std::vector<FJson> sft_entries(std::size_t size, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<FJson> out;
    const std::vector<std::optional<double>> scores{std::nullopt, 5.0, 4.9, 5.5, 6.0, 3.0, 1.0, 0.5, 7.0};
    for (std::size_t i = 0; i < size; ++i) {
        char id[32];
        std::snprintf(id, sizeof id, "sft-%05zu", i);
        std::string prompt = "Explica " + thing_phrase(rng) + " de " + rng.pick(kCities) + " em poucas palavras.";
        std::string answer = sentence(rng);
        FJson msgs = FJson::array();
        switch (i % 8) {
            case 0:
                msgs.push_back(message("user", prompt));
                msgs.push_back(message("assistant", answer));
                break;
            case 1:
                msgs.push_back(message("system", "Responde sempre em português europeu."));
                msgs.push_back(message("user", prompt));
                msgs.push_back(message("assistant", "<think>primeiro penso\n<think>e depois</think> decido</think>\n" + answer));
                break;
            case 2:
                msgs.push_back(message("user", "Quanto é " + std::to_string(i) + " mais " + std::to_string(i + 1) + "?"));
                msgs.push_back(message("assistant", "A resposta é \\boxed{" + std::to_string(2 * i + 1) + "}."));
                break;
            case 3:
                msgs.push_back(message("user", "Quem és tu?"));
                msgs.push_back(message("assistant", "Sou o ChatGPT e " + answer));
                break;
            case 4:  // the prompt of the previous plain entry, reworded only in spacing
                msgs.push_back(message("user", "  Quem   és tu?  "));
                msgs.push_back(message("assistant", answer));
                break;
            case 5:
                msgs.push_back(message("user", prompt));
                msgs.push_back(message("assistant", answer));
                msgs.push_back(message("user", "E porquê?"));
                msgs.push_back(message("assistant", "<think>sem fecho " + answer));
                break;
            case 6:
                msgs.push_back(message("user", prompt));
                msgs.push_back(message("assistant", "   "));
                break;
            default:
                msgs.push_back(message("assistant", answer));
                msgs.push_back(message("user", prompt));
                break;
        }
        out.push_back(entry(id, "fixture", std::move(msgs), scores[i % scores.size()]));
    }
    return out;
}

std::vector<FJson> sft_source(const std::string& name, std::size_t size, std::size_t min_tokens,
                              std::size_t max_tokens, std::uint64_t seed) {
    if (min_tokens < 2 || min_tokens > max_tokens) throw std::invalid_argument("need 2 <= min_tokens <= max_tokens");
    Rng rng(seed);
    std::vector<FJson> out;
    for (std::size_t i = 0; i < size; ++i) {
        auto total = min_tokens + rng.below(max_tokens - min_tokens + 1);
        auto prompt_len = 1 + rng.below(std::max<std::size_t>(1, total / 3));
        FJson msgs = FJson::array();
        msgs.push_back(message("user", words(rng, prompt_len)));
        msgs.push_back(message("assistant", words(rng, total - prompt_len)));
        char id[64];
        std::snprintf(id, sizeof id, "%s-%06zu", name.c_str(), i);
        out.push_back(entry(id, name, std::move(msgs), std::nullopt));
    }
    return out;
}

CorpusPlan write_pipeline_corpus(const fs::path& dir, std::size_t documents, std::size_t files, std::uint64_t seed) {
    if (files == 0) throw std::invalid_argument("files must be positive");
    fs::create_directories(dir);
    Rng rng(seed);
    CorpusPlan plan;
    plan.documents = documents;
    plan.files = files;
    std::vector<std::string> contents(files);
    std::vector<std::string> earlier;  // texts available for near-duplicates
    auto emit = [&](std::size_t file, const WarcFixtureRecord& r) {
        auto bytes = serialize_record(r);
        contents[file] += file == 0 ? gzip_member(bytes) : bytes;
    };
    for (std::size_t f = 0; f < files; ++f) {
        emit(f, make_record("warcinfo", uuid(rng), warc_date(rng), std::nullopt, "application/warc-fields",
                            "software: fixture-crawler/1.0\r\nformat: WARC File Format 1.1\r\n"));
        ++plan.extra_records;
    }
    for (std::size_t i = 0; i < documents; ++i) {
        std::size_t file = i % files;
        auto date = warc_date(rng);
        std::string uri = "https://www." + rng.pick(kSites) + "/artigo/" + std::to_string(i);
        std::string text;
        bool html = rng.below(2) == 0;
        switch (rng.below(20)) {
            case 0:
            case 1:
                uri = "https://noticias.exemplo.com.br/materia/" + std::to_string(i);
                text = prose(rng, 2, 3, 4);
                break;
            case 2: {
                std::vector<std::string> lines;
                for (std::size_t k = 0; k < 6; ++k) lines.push_back(kEnglish[rng.below(kEnglish.size())]);
                text = join_lines(lines);
                uri = "https://news.example.co.uk/story/" + std::to_string(i);
                break;
            }
            case 3: {
                auto p = portuguese_paragraph(rng, 3);
                text = p + "\n\n" + p + "\n\n" + p + "\n\n" + portuguese_paragraph(rng, 2);
                html = false;
                break;
            }
            case 4:
                text = portuguese_paragraph(rng, 1);
                break;
            case 5:
            case 6:
            case 7:
                if (!earlier.empty()) {
                    text = earlier[rng.below(earlier.size())];
                    // Small edit: change the final punctuation mark of one line.
                    auto pos = text.rfind('.');
                    if (pos != std::string::npos) text[pos] = '!';
                    break;
                }
                [[fallthrough]];
            case 8:
                text = prose(rng, 2, 3, 5) + "\nPara mais informações contacte geral@" + rng.pick(kSites) +
                       " ou ligue para o 21" + std::to_string(1000000 + rng.below(8999999)) + ".";
                break;
            default:
                text = prose(rng, 2 + rng.below(2), 3, 5);
                break;
        }
        earlier.push_back(text);
        if (html) {
            emit(file, make_record("response", uuid(rng), date, uri, "application/http; msgtype=response",
                                   http_response("text/html", html_page("Artigo", text))));
        } else {
            emit(file, make_record("response", uuid(rng), date, uri, "application/http; msgtype=response",
                                   http_response("text/plain", text)));
        }
        if (rng.below(10) == 0) {
            emit(file, request_record(rng, uri, date));
            emit(file, metadata_record(rng, uri, date));
            plan.extra_records += 2;
        }
    }
    for (std::size_t f = 0; f < files; ++f) {
        char name[48];
        std::snprintf(name, sizeof name, "crawl-%03zu.warc%s", f, f == 0 ? ".gz" : "");
        write_bytes(dir / name, contents[f]);
    }
    return plan;
}

std::vector<fs::path> generate_fixture(const FixtureSpec& spec, const fs::path& dir) {
    spec.validate();
    fs::create_directories(dir);
    std::vector<fs::path> written;
    switch (spec.kind) {
        case FixtureKind::WarcMinimal: {
            auto p = dir / "minimal.warc";
            write_bytes(p, warc_minimal(spec.size, spec.seed).bytes);
            written.push_back(p);
            auto t = dir / "truncated.warc";
            write_bytes(t, warc_truncated(spec.size, spec.seed).bytes);
            written.push_back(t);
            break;
        }
        case FixtureKind::PortugueseParagraphs: {
            std::vector<FJson> rows;
            for (const auto& d : portuguese_paragraphs(spec.size, spec.seed)) rows.push_back(doc_to_json(d));
            written.push_back(dir / "paragraphs.jsonl");
            write_jsonl(written.back(), rows);
            break;
        }
        case FixtureKind::RepetitionText: {
            std::vector<FJson> rows;
            auto texts = repetition_texts(spec.size, spec.seed);
            for (std::size_t i = 0; i < texts.size(); ++i) {
                FixtureDoc d;
                d.id = "rep-" + std::to_string(i);
                d.text = texts[i];
                rows.push_back(doc_to_json(d));
            }
            written.push_back(dir / "repetition.jsonl");
            write_jsonl(written.back(), rows);
            break;
        }
        case FixtureKind::PiiCases: {
            std::vector<FJson> rows;
            const auto& cases = pii_cases();
            for (std::size_t i = 0; i < std::min(spec.size, cases.size()); ++i) {
                const auto& c = cases[i];
                rows.push_back(FJson{{"name", c.name}, {"input", c.input}, {"expected", c.expected},
                                     {"emails", c.emails}, {"phones", c.phones}, {"ips", c.ips}});
            }
            written.push_back(dir / "pii_cases.jsonl");
            write_jsonl(written.back(), rows);
            break;
        }
        case FixtureKind::OverlapPairs: {
            std::vector<FJson> rows;
            for (std::size_t i = 0; i < spec.size; ++i) {
                auto p = overlap_pair(*spec.jaccard, 200, spec.seed, i);
                rows.push_back(FJson{{"a", p.a}, {"b", p.b}, {"requested", p.requested}, {"exact", p.exact}});
            }
            written.push_back(dir / "overlap_pairs.jsonl");
            write_jsonl(written.back(), rows);
            break;
        }
        case FixtureKind::SftEntries: {
            written.push_back(dir / "sft.jsonl");
            write_jsonl(written.back(), sft_entries(spec.size, spec.seed));
            break;
        }
    }
    return written;
}

}  // namespace corpus_forge::fixtures
