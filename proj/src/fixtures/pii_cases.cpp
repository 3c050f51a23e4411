// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "corpus_forge/fixtures/pii_cases.hpp"

namespace corpus_forge::fixtures {

const std::vector<PiiCase>& pii_cases() {
    static const std::vector<PiiCase> cases{
        // e-mail
        {"email_plain", "contacte joao@exemplo.pt", "contacte <EMAIL>", 1, 0, 0},
        {"email_dots_plus", "escreva para maria.silva+news@correio.gov.pt hoje",
         "escreva para <EMAIL> hoje", 1, 0, 0},
        {"email_trailing_period", "O endereço é ana_lopes@empresa.com.", "O endereço é <EMAIL>.", 1, 0, 0},
        {"email_in_parens", "(geral@camara-lisboa.pt)", "(<EMAIL>)", 1, 0, 0},
        {"email_two", "a@b.pt ou c.d@e.org", "<EMAIL> ou <EMAIL>", 2, 0, 0},
        {"email_angle", "Rui <rui.costa@sapo.pt>", "Rui <<EMAIL>>", 1, 0, 0},
        {"email_uppercase", "INFO@LOJA.PT", "<EMAIL>", 1, 0, 0},
        {"email_subdomain", "suporte@mail.servicos.ulisboa.pt", "<EMAIL>", 1, 0, 0},
        {"email_digits", "user123@dominio99.eu", "<EMAIL>", 1, 0, 0},
        {"email_obfuscated_at", "joao [at] exemplo [dot] pt", "joao [at] exemplo [dot] pt", 0, 0, 0},
        {"email_obfuscated_words", "joao arroba exemplo ponto pt", "joao arroba exemplo ponto pt", 0, 0, 0},
        {"email_no_tld", "utilizador@localhost", "utilizador@localhost", 0, 0, 0},
        {"email_handle", "siga @jornal_publico no feed", "siga @jornal_publico no feed", 0, 0, 0},
        {"email_numeric_tld", "x@y.123", "x@y.123", 0, 0, 0},
        {"email_bare_at", "a @ b", "a @ b", 0, 0, 0},
        // phones
        {"phone_intl_spaced", "ligue +351 912 345 678", "ligue <PHONE>", 0, 1, 0},
        {"phone_intl_compact", "tel.: +351912345678", "tel.: <PHONE>", 0, 1, 0},
        {"phone_intl_landline", "+351 213 456 789 (geral)", "<PHONE> (geral)", 0, 1, 0},
        {"phone_00351", "00351 912 345 678", "<PHONE>", 0, 1, 0},
        {"phone_national_spaced", "Telemóvel: 912 345 678.", "Telemóvel: <PHONE>.", 0, 1, 0},
        {"phone_national_compact", "ligar 912345678 amanhã", "ligar <PHONE> amanhã", 0, 1, 0},
        {"phone_national_hyphen", "fixo 213-456-789", "fixo <PHONE>", 0, 1, 0},
        {"phone_lisbon_groups", "Lisboa 21 345 6789", "Lisboa <PHONE>", 0, 1, 0},
        {"phone_nbsp", "tel 912\u00A0345\u00A0678", "tel <PHONE>", 0, 1, 0},
        {"phone_intl_other", "Londres +44 20 7946 0958", "Londres <PHONE>", 0, 1, 0},
        {"phone_intl_spain", "Madrid +34 912 345 678.", "Madrid <PHONE>.", 0, 1, 0},
        {"phone_two", "912 345 678 ou 936 111 222", "<PHONE> ou <PHONE>", 0, 2, 0},
        {"phone_in_parens", "(296 123 456)", "(<PHONE>)", 0, 1, 0},
        {"phone_wrong_lead", "número 812 345 678", "número 812 345 678", 0, 0, 0},
        {"phone_eight_digits", "código 91234567", "código 91234567", 0, 0, 0},
        {"phone_ten_digits", "conta 9123456789", "conta 9123456789", 0, 0, 0},
        {"phone_nif_like", "NIF 234567890123", "NIF 234567890123", 0, 0, 0},
        {"phone_iban_fragment", "PT50 0002 0123 1234 5678 9015 4", "PT50 0002 0123 1234 5678 9015 4", 0, 0, 0},
        {"phone_price", "custa 2 345,99 euros", "custa 2 345,99 euros", 0, 0, 0},
        {"phone_year_range", "entre 1995 e 2023", "entre 1995 e 2023", 0, 0, 0},
        {"phone_intl_bad_pt", "+351 812 345 678", "+351 812 345 678", 0, 0, 0},
        // dates and numbers that must survive
        {"date_iso", "publicado em 2023-05-12", "publicado em 2023-05-12", 0, 0, 0},
        {"date_slash", "a 12/05/2023 às 10:30", "a 12/05/2023 às 10:30", 0, 0, 0},
        {"date_dots", "data 12.05.2023", "data 12.05.2023", 0, 0, 0},
        {"date_hyphen", "nascido a 03-11-1987", "nascido a 03-11-1987", 0, 0, 0},
        {"time_hms", "às 12:30:45 em ponto", "às 12:30:45 em ponto", 0, 0, 0},
        {"decimal", "subiu 3.14159 pontos", "subiu 3.14159 pontos", 0, 0, 0},
        {"thousands", "população de 10.298.252", "população de 10.298.252", 0, 0, 0},
        // IPv4
        {"ip_public", "servidor em 8.8.8.8 e router 192.168.0.1", "servidor em <IP> e router 192.168.0.1", 0, 0, 1},
        {"ip_public_sentence_end", "O acesso veio de 193.136.1.10.", "O acesso veio de <IP>.", 0, 0, 1},
        {"ip_private_10", "rede 10.0.0.1", "rede 10.0.0.1", 0, 0, 0},
        {"ip_private_172", "gateway 172.16.5.4", "gateway 172.16.5.4", 0, 0, 0},
        {"ip_loopback", "localhost é 127.0.0.1", "localhost é 127.0.0.1", 0, 0, 0},
        {"ip_link_local", "169.254.10.20 sem DHCP", "169.254.10.20 sem DHCP", 0, 0, 0},
        {"ip_documentation", "exemplo 203.0.113.7", "exemplo 203.0.113.7", 0, 0, 0},
        {"ip_cgnat", "operador 100.64.1.1", "operador 100.64.1.1", 0, 0, 0},
        {"ip_octet_range", "valor 256.1.1.1", "valor 256.1.1.1", 0, 0, 0},
        {"ip_leading_zero", "ID 01.02.03.04", "ID 01.02.03.04", 0, 0, 0},
        {"ip_five_parts", "secção 1.2.3.4.5", "secção 1.2.3.4.5", 0, 0, 0},
        {"ip_with_port", "ligar a 85.240.1.2:8080", "ligar a <IP>:8080", 0, 0, 1},
        {"ip_in_url", "http://62.28.1.1/index.html", "http://<IP>/index.html", 0, 0, 1},
        // version strings
        {"version_versao", "instale a versão 2.4.1.1 do programa", "instale a versão 2.4.1.1 do programa", 0, 0, 0},
        {"version_v_glued", "atualização v2.4.1.1", "atualização v2.4.1.1", 0, 0, 0},
        {"version_v_spaced", "corre a v 2.4.1.1", "corre a v 2.4.1.1", 0, 0, 0},
        {"version_english", "Version 10.0.19041.1", "Version 10.0.19041.1", 0, 0, 0},
        {"version_build", "build 5.1.2.600", "build 5.1.2.600", 0, 0, 0},
        {"version_release_colon", "release: 1.2.3.4", "release: 1.2.3.4", 0, 0, 0},
        {"version_firmware", "firmware 3.10.2.1 instalado", "firmware 3.10.2.1 instalado", 0, 0, 0},
        // IPv6
        {"ipv6_public", "endereço 2a00:1450:4003:80b::200e ativo", "endereço <IP> ativo", 0, 0, 1},
        {"ipv6_documentation", "exemplo 2001:db8::1", "exemplo 2001:db8::1", 0, 0, 0},
        {"ipv6_loopback", "teste ::1 local", "teste ::1 local", 0, 0, 0},
        {"ipv6_link_local", "interface fe80::1ff:fe23:4567:890a", "interface fe80::1ff:fe23:4567:890a", 0, 0, 0},
        {"ipv6_unique_local", "fd12:3456:789a:1::1", "fd12:3456:789a:1::1", 0, 0, 0},
        {"ipv6_mapped_private", "::ffff:192.168.1.1", "::ffff:192.168.1.1", 0, 0, 0},
        {"ipv6_mapped_public", "origem ::ffff:8.8.4.4", "origem <IP>", 0, 0, 1},
        // mixed and untouched text
        {"mixed_all", "Email: ana@ipl.pt, tel. 912 345 678, IP 194.65.3.20.",
         "Email: <EMAIL>, tel. <PHONE>, IP <IP>.", 1, 1, 1},
        {"no_pii_accents", "Não há dados pessoais aqui, só acentuação: ção, ões, à.",
         "Não há dados pessoais aqui, só acentuação: ção, ões, à.", 0, 0, 0},
        {"no_pii_tokens", "Marcadores <EMAIL> e <PHONE> já redigidos.", "Marcadores <EMAIL> e <PHONE> já redigidos.", 0,
         0, 0},
        {"empty", "", "", 0, 0, 0},
    };
    return cases;
}

}  // namespace corpus_forge::fixtures
