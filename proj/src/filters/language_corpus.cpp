// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include <array>

#include "corpus_forge/filters/language.hpp"

namespace corpus_forge::filters {
namespace {

constexpr std::array kPortuguese{
    "O comboio para o Porto parte da estação de Santa Apolónia às nove horas da manhã.",
    "A câmara municipal aprovou ontem o novo plano de mobilidade para o centro histórico.",
    "Os alunos do secundário regressam às aulas na próxima segunda-feira, depois das férias.",
    "Este fim de semana vamos almoçar a casa dos meus avós, que vivem perto de Coimbra.",
    "O governo anunciou medidas de apoio às famílias afetadas pela subida dos preços da energia.",
    "A biblioteca está aberta todos os dias úteis, exceto nos feriados nacionais.",
    "Não te esqueças de comprar pão e leite quando passares pela mercearia.",
    "O Sporting venceu o jogo de ontem com dois golos marcados na segunda parte.",
    "As previsões meteorológicas indicam chuva forte para todo o litoral norte do país.",
    "A exposição de pintura contemporânea pode ser visitada até ao final do mês de março.",
    "O meu irmão mais novo está a estudar engenharia informática na Universidade de Lisboa.",
    "Depois do jantar fomos dar um passeio à beira-rio e vimos o pôr do sol.",
    "Os trabalhadores da fábrica reuniram-se para discutir as novas condições salariais.",
    "A receita leva bacalhau, batatas, cebola, azeite e um pouco de salsa picada.",
    "Gostaria de marcar uma consulta com o médico de família para a próxima semana.",
    "O autocarro estava atrasado, por isso cheguei ao escritório depois das dez.",
    "A associação cultural organiza todos os anos um festival de música tradicional.",
    "Os resultados do inquérito mostram que a maioria das pessoas prefere trabalhar a partir de casa.",
    "O parlamento discutiu durante várias horas a proposta de orçamento do Estado.",
    "Quando era criança passava os verões na praia com os meus primos.",
    "A empresa pretende contratar mais de cem pessoas até ao fim do ano.",
    "O incêndio foi dominado durante a madrugada graças ao trabalho dos bombeiros.",
    "É preciso preencher o formulário e entregá-lo na secretaria até sexta-feira.",
    "Os turistas ficaram encantados com a arquitetura dos mosteiros e das igrejas.",
    "O livro conta a história de uma família que emigrou para França nos anos sessenta.",
    "A nova linha do metropolitano vai ligar o aeroporto ao centro da cidade.",
    "Temos de poupar água, porque este verão foi particularmente seco.",
    "O professor pediu aos alunos que lessem o capítulo sobre os Descobrimentos.",
    "A farmácia de serviço fica na rua principal, ao lado da pastelaria.",
    "Os agricultores queixam-se da falta de chuva e do aumento dos custos de produção.",
    "Ela trabalha como enfermeira no hospital distrital há mais de quinze anos.",
    "Vou à estação de comboios para comprar um bilhete para Faro.",
    "O pequeno-almoço é servido entre as sete e as dez horas da manhã.",
    "A população da aldeia tem vindo a diminuir ao longo das últimas décadas.",
    "Os investigadores publicaram um estudo sobre a qualidade do ar nas grandes cidades.",
    "Se quiseres, podemos ir ao cinema no sábado à tarde.",
    "O concerto foi adiado devido às más condições do tempo.",
    "A loja fecha mais cedo na véspera de Natal e reabre no dia seguinte.",
    "Os deputados aprovaram por unanimidade a nova lei de proteção dos animais.",
    "O vinho do Douro é conhecido em todo o mundo pela sua qualidade.",
    "A ponte esteve encerrada ao trânsito durante as obras de manutenção.",
    "Precisamos de mais informação antes de tomar uma decisão definitiva.",
    "O museu recebeu uma doação de documentos antigos sobre a história da região.",
    "Os preços das casas continuam a subir nas principais cidades portuguesas.",
    "O treinador mostrou-se satisfeito com a exibição da equipa no último jogo.",
    "A escola organizou uma visita de estudo ao Jardim Botânico.",
    "Ainda não recebi a encomenda que fiz pela internet há duas semanas.",
    "A feira do livro começa amanhã e conta com a presença de vários autores.",
    "Os pescadores não saíram para o mar por causa da agitação marítima.",
    "O relatório final será apresentado aos acionistas na assembleia geral.",
    "Neste restaurante comem-se as melhores sardinhas assadas da cidade.",
    "A reunião ficou marcada para quinta-feira, às três horas da tarde.",
    "As obras de requalificação da praça deverão estar concluídas no próximo ano.",
    "O romance foi traduzido para mais de vinte línguas e vendeu milhões de exemplares.",
    "Já tratei de todos os documentos necessários para a viagem.",
};

constexpr std::array kEnglish{
    "The train to Manchester leaves from platform four at nine o'clock in the morning.",
    "The city council approved the new transport plan for the historic town centre yesterday.",
    "Students will return to school next Monday after the winter holidays.",
    "This weekend we are having lunch at my grandparents' house near the coast.",
    "The government announced new support for families affected by rising energy prices.",
    "The library is open every weekday except on national holidays.",
    "Don't forget to buy bread and milk when you pass by the shop.",
    "The home team won yesterday's match with two goals in the second half.",
    "Forecasters expect heavy rain along the northern coast throughout the weekend.",
    "The exhibition of contemporary painting can be visited until the end of March.",
    "My younger brother is studying computer engineering at a university in London.",
    "After dinner we went for a walk along the river and watched the sunset.",
    "Factory workers met to discuss the new pay and working conditions.",
    "The recipe calls for salted cod, potatoes, onions, olive oil and a little parsley.",
    "I would like to book an appointment with my doctor for next week.",
    "The bus was running late, so I only arrived at the office after ten.",
    "The cultural association organises a traditional music festival every year.",
    "The survey results show that most people prefer to work from home.",
    "Parliament spent several hours debating the proposed national budget.",
    "When I was a child I spent every summer at the beach with my cousins.",
    "The company intends to hire more than one hundred people by the end of the year.",
    "The fire was brought under control overnight thanks to the firefighters.",
    "You need to fill in the form and hand it in at the office by Friday.",
    "The tourists were delighted with the architecture of the old monasteries and churches.",
    "The book tells the story of a family that emigrated to France in the sixties.",
    "The new underground line will connect the airport with the city centre.",
    "We have to save water because this summer has been particularly dry.",
    "The teacher asked the pupils to read the chapter about the age of exploration.",
    "The pharmacy on duty is on the main street, next to the bakery.",
    "Farmers are complaining about the lack of rain and the rising cost of production.",
    "She has worked as a nurse at the district hospital for more than fifteen years.",
    "I am going to the railway station to buy a ticket for the coast.",
    "Breakfast is served between seven and ten o'clock in the morning.",
    "The population of the village has been falling over the last few decades.",
    "Researchers published a study about air quality in large cities.",
    "If you like, we could go to the cinema on Saturday afternoon.",
    "The concert was postponed because of the bad weather.",
    "The shop closes early on Christmas Eve and reopens the following day.",
    "Members of parliament unanimously approved the new animal welfare law.",
    "Wine from the valley is known all over the world for its quality.",
    "The bridge was closed to traffic during the maintenance work.",
    "We need more information before we can make a final decision.",
    "The museum received a donation of old documents about the history of the region.",
    "House prices keep rising in the country's biggest cities.",
    "The coach was pleased with the team's performance in the last game.",
    "The school organised a field trip to the botanical garden.",
    "I still haven't received the parcel I ordered online two weeks ago.",
    "The book fair starts tomorrow and several authors will be there.",
    "The fishermen did not go out to sea because of the rough waters.",
    "The final report will be presented to shareholders at the general meeting.",
    "This restaurant serves the best grilled sardines in town.",
    "The meeting has been scheduled for Thursday at three in the afternoon.",
    "Renovation of the square should be finished by next year.",
    "The novel has been translated into more than twenty languages and sold millions of copies.",
    "I have already sorted out all the documents we need for the trip.",
};

constexpr std::array kSpanish{
    "El tren hacia Sevilla sale de la estación de Atocha a las nueve de la mañana.",
    "El ayuntamiento aprobó ayer el nuevo plan de movilidad para el casco antiguo.",
    "Los alumnos vuelven a clase el próximo lunes después de las vacaciones.",
    "Este fin de semana vamos a comer en casa de mis abuelos, que viven cerca de Valencia.",
    "El gobierno anunció ayudas para las familias afectadas por la subida de la luz.",
    "La biblioteca está abierta todos los días laborables, excepto los festivos.",
    "No te olvides de comprar pan y leche cuando pases por la tienda.",
    "El equipo local ganó el partido de ayer con dos goles en la segunda parte.",
    "Las previsiones indican lluvias fuertes en todo el litoral norte del país.",
    "La exposición de pintura contemporánea se puede visitar hasta finales de marzo.",
    "Mi hermano pequeño estudia ingeniería informática en la Universidad de Madrid.",
    "Después de cenar dimos un paseo junto al río y vimos la puesta de sol.",
    "Los trabajadores de la fábrica se reunieron para hablar de las nuevas condiciones.",
    "La receta lleva bacalao, patatas, cebolla, aceite de oliva y un poco de perejil.",
    "Me gustaría pedir una cita con el médico de cabecera para la semana que viene.",
    "El autobús llegó tarde, así que entré en la oficina después de las diez.",
    "La asociación cultural organiza cada año un festival de música tradicional.",
    "Los resultados de la encuesta muestran que la mayoría prefiere trabajar desde casa.",
    "El congreso debatió durante horas la propuesta de presupuestos generales.",
    "Cuando era niño pasaba los veranos en la playa con mis primos.",
    "La empresa quiere contratar a más de cien personas antes de que acabe el año.",
    "El incendio fue controlado durante la madrugada gracias a los bomberos.",
    "Hay que rellenar el formulario y entregarlo en la secretaría antes del viernes.",
    "Los turistas quedaron encantados con la arquitectura de los monasterios y las iglesias.",
    "El libro cuenta la historia de una familia que emigró a Francia en los años sesenta.",
    "La nueva línea de metro unirá el aeropuerto con el centro de la ciudad.",
    "Tenemos que ahorrar agua porque este verano ha sido muy seco.",
    "El profesor pidió a los alumnos que leyeran el capítulo sobre los descubrimientos.",
    "La farmacia de guardia está en la calle mayor, al lado de la panadería.",
    "Los agricultores se quejan de la falta de lluvia y del aumento de los costes.",
    "Ella trabaja como enfermera en el hospital comarcal desde hace más de quince años.",
    "Voy a la estación de tren para comprar un billete a Málaga.",
    "El desayuno se sirve entre las siete y las diez de la mañana.",
    "La población del pueblo ha ido disminuyendo en las últimas décadas.",
    "Los investigadores publicaron un estudio sobre la calidad del aire en las ciudades.",
    "Si quieres, podemos ir al cine el sábado por la tarde.",
    "El concierto se aplazó por el mal tiempo.",
    "La tienda cierra antes en Nochebuena y vuelve a abrir al día siguiente.",
    "Los diputados aprobaron por unanimidad la nueva ley de protección animal.",
    "El vino de la Rioja es conocido en todo el mundo por su calidad.",
    "El puente estuvo cerrado al tráfico durante las obras de mantenimiento.",
    "Necesitamos más información antes de tomar una decisión definitiva.",
    "El museo recibió una donación de documentos antiguos sobre la historia de la región.",
    "Los precios de la vivienda siguen subiendo en las principales ciudades españolas.",
    "El entrenador se mostró satisfecho con el juego del equipo en el último partido.",
    "El colegio organizó una excursión al jardín botánico.",
    "Todavía no he recibido el pedido que hice por internet hace dos semanas.",
    "La feria del libro empieza mañana y contará con la presencia de varios autores.",
    "Los pescadores no salieron a faenar por el mal estado de la mar.",
    "El informe final se presentará a los accionistas en la junta general.",
    "En este restaurante se comen las mejores sardinas asadas de la ciudad.",
    "La reunión quedó fijada para el jueves a las tres de la tarde.",
    "Las obras de la plaza deberían terminar el año que viene.",
    "La novela se ha traducido a más de veinte idiomas y ha vendido millones de ejemplares.",
    "Ya he preparado todos los documentos que necesitamos para el viaje.",
};

}  // namespace

std::span<const LabeledText> builtin_language_corpus() {
    static const std::vector<LabeledText> corpus = [] {
        std::vector<LabeledText> out;
        for (const char* s : kPortuguese) out.push_back({s, "por"});
        for (const char* s : kEnglish) out.push_back({s, "eng"});
        for (const char* s : kSpanish) out.push_back({s, "spa"});
        return out;
    }();
    return corpus;
}

const std::vector<LangProfile>& builtin_profiles() {
    static const std::vector<LangProfile> profiles = train_lang_profiles(builtin_language_corpus());
    return profiles;
}

}  // namespace corpus_forge::filters
