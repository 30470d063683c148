#![allow(dead_code)]
//! Reference values computed with mpmath at 40 significant digits.

pub const ERF: &[(f64, f64)] = &[
    (-6.0, -0.99999999999999997848),
    (-5.875, -0.99999999999999990308),
    (-5.75, -0.99999999999999957679),
    (-5.625, -0.99999999999999820798),
    (-5.5, -0.99999999999999264215),
    (-5.375, -0.99999999999997070511),
    (-5.25, -0.99999999999988689687),
    (-5.125, -0.99999999999957654366),
    (-5.0, -0.99999999999846254021),
    (-4.875, -0.99999999999458659353),
    (-4.75, -0.99999999998151495228),
    (-4.625, -0.99999999993878389487),
    (-4.5, -0.99999999980338395585),
    (-4.375, -0.99999999938751670464),
    (-4.25, -0.99999999814942586261),
    (-4.125, -0.99999999457659920043),
    (-4.0, -0.99999998458274209972),
    (-3.875, -0.99999995748605591751),
    (-3.75, -0.9999998862727434302),
    (-3.625, -0.99999970485980748843),
    (-3.5, -0.99999925690162765859),
    (-3.375, -0.99999818471857255964),
    (-3.25, -0.99999569722053632488),
    (-3.125, -0.99999010326537475438),
    (-3.0, -0.99997790950300141456),
    (-2.875, -0.99995214516025622659),
    (-2.75, -0.99989937807788036316),
    (-2.625, -0.99979462426385878256),
    (-2.5, -0.99959304798255504106),
    (-2.375, -0.9992170617821088808),
    (-2.25, -0.9985372834133188483),
    (-2.125, -0.99734597064051765847),
    (-2.0, -0.99532226501895273416),
    (-1.875, -0.9919900576701199703),
    (-1.75, -0.98667167121918244377),
    (-1.625, -0.97844373323998366472),
    (-1.5, -0.96610514647531072707),
    (-1.375, -0.94817007278209032256),
    (-1.25, -0.92290012825645823014),
    (-1.125, -0.88838823170170776407),
    (-1.0, -0.84270079294971486934),
    (-0.875, -0.78407506105985965831),
    (-0.75, -0.7111556336535151316),
    (-0.625, -0.62324088218841797245),
    (-0.5, -0.52049987781304653768),
    (-0.375, -0.40411690943482229832),
    (-0.25, -0.27632639016823693299),
    (-0.125, -0.14031620480133381739),
    (0.0, 0.0),
    (0.125, 0.14031620480133381739),
    (0.25, 0.27632639016823693299),
    (0.375, 0.40411690943482229832),
    (0.5, 0.52049987781304653768),
    (0.625, 0.62324088218841797245),
    (0.75, 0.7111556336535151316),
    (0.875, 0.78407506105985965831),
    (1.0, 0.84270079294971486934),
    (1.125, 0.88838823170170776407),
    (1.25, 0.92290012825645823014),
    (1.375, 0.94817007278209032256),
    (1.5, 0.96610514647531072707),
    (1.625, 0.97844373323998366472),
    (1.75, 0.98667167121918244377),
    (1.875, 0.9919900576701199703),
    (2.0, 0.99532226501895273416),
    (2.125, 0.99734597064051765847),
    (2.25, 0.9985372834133188483),
    (2.375, 0.9992170617821088808),
    (2.5, 0.99959304798255504106),
    (2.625, 0.99979462426385878256),
    (2.75, 0.99989937807788036316),
    (2.875, 0.99995214516025622659),
    (3.0, 0.99997790950300141456),
    (3.125, 0.99999010326537475438),
    (3.25, 0.99999569722053632488),
    (3.375, 0.99999818471857255964),
    (3.5, 0.99999925690162765859),
    (3.625, 0.99999970485980748843),
    (3.75, 0.9999998862727434302),
    (3.875, 0.99999995748605591751),
    (4.0, 0.99999998458274209972),
    (4.125, 0.99999999457659920043),
    (4.25, 0.99999999814942586261),
    (4.375, 0.99999999938751670464),
    (4.5, 0.99999999980338395585),
    (4.625, 0.99999999993878389487),
    (4.75, 0.99999999998151495228),
    (4.875, 0.99999999999458659353),
    (5.0, 0.99999999999846254021),
    (5.125, 0.99999999999957654366),
    (5.25, 0.99999999999988689687),
    (5.375, 0.99999999999997070511),
    (5.5, 0.99999999999999264215),
    (5.625, 0.99999999999999820798),
    (5.75, 0.99999999999999957679),
    (5.875, 0.99999999999999990308),
    (6.0, 0.99999999999999997848),
];
pub const ERFC: &[(f64, f64)] = &[
    (-4.0, 1.9999999845827420997),
    (-3.75, 1.9999998862727434302),
    (-3.5, 1.9999992569016276586),
    (-3.25, 1.9999956972205363249),
    (-3.0, 1.9999779095030014146),
    (-2.75, 1.9998993780778803632),
    (-2.5, 1.9995930479825550411),
    (-2.25, 1.9985372834133188483),
    (-2.0, 1.9953222650189527342),
    (-1.75, 1.9866716712191824438),
    (-1.5, 1.9661051464753107271),
    (-1.25, 1.9229001282564582301),
    (-1.0, 1.8427007929497148693),
    (-0.75, 1.7111556336535151316),
    (-0.5, 1.5204998778130465377),
    (-0.25, 1.276326390168236933),
    (0.0, 1.0),
    (0.25, 0.72367360983176306701),
    (0.5, 0.47950012218695346232),
    (0.75, 0.2888443663464848684),
    (1.0, 0.15729920705028513066),
    (1.25, 0.077099871743541769863),
    (1.5, 0.033894853524689272933),
    (1.75, 0.013328328780817556228),
    (2.0, 0.0046777349810472658379),
    (2.25, 0.0014627165866811516979),
    (2.5, 0.00040695201744495893956),
    (2.75, 0.0001006219221196368369),
    (3.0, 0.000022090496998585441373),
    (3.25, 4.3027794636751218305e-6),
    (3.5, 7.4309837234141274552e-7),
    (3.75, 1.1372725656979665326e-7),
    (4.0, 1.5417257900280018852e-8),
    (4.25, 1.8505741373867425201e-9),
    (4.5, 1.9661604415428874763e-10),
    (4.75, 1.8485047721485310887e-11),
    (5.0, 1.5374597944280348502e-12),
    (5.25, 1.1310313266887153883e-13),
    (5.5, 7.3578479179743980631e-15),
    (5.75, 4.2321366174257376259e-16),
    (6.0, 2.1519736712498913117e-17),
    (6.25, 9.6722041318762539915e-19),
    (6.5, 3.8421483271206474699e-20),
    (6.75, 1.3487678893611300512e-21),
    (7.0, 4.1838256077794143986e-23),
    (7.25, 1.1466900814815011617e-24),
    (7.5, 2.7766493860305691007e-26),
    (7.75, 5.9397478595171462153e-28),
    (8.0, 1.122429717298292708e-29),
    (8.25, 1.8735664705504997079e-31),
    (8.5, 2.7623240713337714461e-33),
    (8.75, 3.5971157286470720157e-35),
    (9.0, 4.1370317465138102381e-37),
    (9.25, 4.2020372149197111345e-39),
    (9.5, 3.7692144856548799417e-41),
    (9.75, 2.9857008328005783221e-43),
    (10.0, 2.088487583762544757e-45),
    (10.25, 1.2900138905042904038e-47),
    (10.5, 7.0359280901775226867e-50),
    (10.75, 3.3884524270649429427e-52),
    (11.0, 1.4408661379436946803e-54),
    (11.25, 5.4097608706899213609e-57),
    (11.5, 1.7933096435767820581e-59),
    (11.75, 5.2486360970085416712e-62),
    (12.0, 1.3562611692059042128e-64),
    (12.25, 3.0941267405402098542e-67),
    (12.5, 6.2319427819799110061e-70),
    (12.75, 1.1081345768520579609e-72),
    (13.0, 1.7395573154667245218e-75),
    (13.25, 2.4107713726371346156e-78),
    (13.5, 2.9494331132579882648e-81),
    (13.75, 3.1855236206403380018e-84),
    (14.0, 3.0372298477503116651e-87),
    (14.25, 2.5563723430886488689e-90),
    (14.5, 1.8993959419795030496e-93),
    (14.75, 1.2457973521857586151e-96),
    (15.0, 7.2129941724512066666e-100),
    (15.25, 3.6865151492308134658e-103),
    (15.5, 1.6632016400488723341e-106),
    (15.75, 6.6236684125590638088e-110),
    (16.0, 2.3284857515715306934e-113),
    (16.25, 7.2254781962269443605e-117),
    (16.5, 1.9791305755532679721e-120),
    (16.75, 4.7851341834670919505e-124),
    (17.0, 1.0212280150942608811e-127),
    (17.25, 1.9237891895868788045e-131),
    (17.5, 3.1988638123434809882e-135),
    (17.75, 4.6949934999226950908e-139),
    (18.0, 6.0823692318163993077e-143),
    (18.25, 6.9551543673978216019e-147),
    (18.5, 7.0199615749856793246e-151),
    (18.75, 6.2539515888781049381e-155),
    (19.0, 4.9177228392564754464e-159),
    (19.25, 3.4131969559665760996e-163),
    (19.5, 2.0909541479227294605e-167),
    (19.75, 1.1306070534662014138e-171),
    (20.0, 5.3958656116079009289e-176),
    (20.25, 2.2729564178807836709e-180),
    (20.5, 8.4508423695724583943e-185),
    (20.75, 2.7732321105647362915e-189),
    (21.0, 8.032453871022455669e-194),
    (21.25, 2.0534521584449841126e-198),
    (21.5, 4.6333365396584456491e-203),
    (21.75, 9.2272999679977198282e-208),
    (22.0, 1.6219058609334725131e-212),
    (22.25, 2.5162024287605107338e-217),
    (22.5, 3.445348860464601762e-222),
    (22.75, 4.163775674054040907e-227),
    (23.0, 4.4412659480880572441e-232),
    (23.25, 4.1810990031782962822e-237),
    (23.5, 3.4740594956499715027e-242),
    (23.75, 2.5476873481544780566e-247),
    (24.0, 1.6489825831519335142e-252),
    (24.25, 9.4198953781325638588e-258),
    (24.5, 4.7493612640673789976e-263),
    (24.75, 2.1134039756554101358e-268),
    (25.0, 8.300172571196522752e-274),
    (25.25, 2.8770548273293950016e-279),
    (25.5, 8.8016626907279505713e-285),
    (25.75, 2.3764903057029406416e-290),
    (26.0, 5.6631924088561428465e-296),
];
pub const ERFCX: &[(f64, f64)] = &[
    (-5.0, 144009798674.66104041),
    (-4.75, 12583435970.683793279),
    (-4.5, 1245928884.274406163),
    (-4.25, 139789346.50946670889),
    (-4.0, 17772220.904016287648),
    (-3.75, 2560331.0479388461669),
    (-3.5, 417962.42244577031413),
    (-3.25, 77315.136403756076712),
    (-3.0, 16205.988853999586625),
    (-2.75, 3849.1086012576152261),
    (-2.5, 1035.8148429726229083),
    (-2.25, 315.73888373164453896),
    (-2.0, 108.94090438997797241),
    (-1.75, 42.476913283509250545),
    (-1.5, 18.653886256262733939),
    (-1.25, 9.1736434474828444344),
    (-1.0, 5.0089800807622834663),
    (-0.75, 3.0031716636274523087),
    (-0.5, 1.9523604891825570933),
    (-0.25, 1.3586423701047221152),
    (0.0, 1.0),
    (0.25, 0.77034654773099674392),
    (0.5, 0.61569034419292587487),
    (0.75, 0.50693765029314480579),
    (1.0, 0.42758357615580700441),
    (1.25, 0.36782291645236109293),
    (1.5, 0.32158541645431750235),
    (1.75, 0.28497223473743638921),
    (2.0, 0.25539567631050574387),
    (2.25, 0.23108725873039186996),
    (2.5, 0.21080636406114358065),
    (2.75, 0.1936620962790686786),
    (3.0, 0.17900115118138995042),
    (3.25, 0.16633534842682187676),
    (3.5, 0.1552936556088942974),
    (3.75, 0.14558972127503853905),
    (4.0, 0.13699945762506138989),
    (4.25, 0.1293452747859879108),
    (4.5, 0.12248480427384141755),
    (4.75, 0.11630270721024730767),
    (5.0, 0.11070463773306862637),
    (5.25, 0.1056127354688918024),
    (5.5, 0.10096221839949908823),
    (5.75, 0.096698778169713920817),
    (6.0, 0.092776567800538354389),
    (6.25, 0.089156631787274389873),
    (6.5, 0.085805670104894601778),
    (6.75, 0.082695056775053059527),
    (7.0, 0.07980005432915293349),
    (7.25, 0.077099180351259901664),
    (7.5, 0.074573693062876683005),
    (7.75, 0.072207170814669760508),
    (8.0, 0.069985166200880927723),
    (8.25, 0.067894919882720562683),
    (8.5, 0.065925122499980351741),
    (8.75, 0.06406571555128014472),
    (9.0, 0.062307724037774684147),
    (9.25, 0.060643115141143659079),
    (9.5, 0.059064678352563890854),
    (9.75, 0.05756592336481546652),
    (10.0, 0.056140992743822585858),
    (10.25, 0.054784586952954527788),
    (10.5, 0.053491899746564116726),
    (10.75, 0.052258562303717550661),
    (11.0, 0.05108059475808844371),
    (11.25, 0.049954364010299338957),
    (11.5, 0.048876546895982276458),
    (11.75, 0.047844097935337087237),
    (12.0, 0.04685422101489376262),
    (12.25, 0.045904344454949901694),
    (12.5, 0.044992099001027920845),
    (12.75, 0.044115298348065216363),
    (13.0, 0.043271921864609692663),
    (13.25, 0.0424600992331991746),
    (13.5, 0.041678096764088149221),
    (13.75, 0.040924305173945979031),
    (14.0, 0.040197228650218459306),
    (14.25, 0.039495475046439002188),
    (14.5, 0.038817747074647219383),
    (14.75, 0.038162834378835745961),
    (15.0, 0.037529606388505765746),
    (15.25, 0.036917005864384212474),
    (15.5, 0.036324043059485428598),
    (15.75, 0.035749790428272943059),
    (16.0, 0.035193377824930837566),
    (16.25, 0.03465398813888746392),
    (16.5, 0.034130853321913274415),
    (16.75, 0.033623250766478772603),
    (17.0, 0.0331304999997255367),
    (17.25, 0.032651959661472035262),
    (17.5, 0.032187024738230408088),
    (17.75, 0.031735124028321652782),
    (18.0, 0.031295717815905209886),
    (18.25, 0.030868295734136306541),
    (18.5, 0.030452374799774609709),
    (18.75, 0.030047497603428424599),
    (19.0, 0.029653230641262163525),
    (19.25, 0.029269162775448878443),
    (19.5, 0.028894903811938217647),
    (19.75, 0.028530083185253877162),
    (20.0, 0.028174348741051319319),
    (20.25, 0.027827365608071687129),
    (20.5, 0.027488815151934872126),
    (20.75, 0.027158394003935261382),
    (21.0, 0.026835813158647956642),
    (21.25, 0.026520797134730088104),
    (21.5, 0.026213083193818982508),
    (21.75, 0.025912420612893168368),
    (22.0, 0.025618570005879452668),
    (22.25, 0.02533130269066480019),
    (22.5, 0.025050400098010076092),
    (22.75, 0.024775653219167913796),
    (23.0, 0.024506862089282605906),
    (23.25, 0.024243835303899131296),
    (23.5, 0.023986389566134008505),
    (23.75, 0.023734349262265067289),
    (24.0, 0.023487546063682640519),
    (24.25, 0.023245818553313036652),
    (24.5, 0.023009011874778182188),
    (24.75, 0.022776977402694557872),
    (25.0, 0.022549572432641358944),
    (25.25, 0.022326659889443407805),
    (25.5, 0.022108108052519826561),
    (25.75, 0.021893790297145810775),
    (26.0, 0.021683584850562906616),
    (26.25, 0.021477374561953762653),
    (26.5, 0.021275046685371105955),
    (26.75, 0.021076492674778309562),
    (27.0, 0.020881607990420940674),
    (27.25, 0.020690291915805615651),
    (27.5, 0.020502447384614797762),
    (27.75, 0.020317980816934270528),
    (28.0, 0.020136801964214276777),
    (28.25, 0.019958823762426068578),
    (28.5, 0.01978396219291317117),
    (28.75, 0.019612136150471300824),
    (29.0, 0.01944326731822284258),
    (29.25, 0.019277280048881315526),
    (29.5, 0.019114101252028536752),
    (29.75, 0.018953660287052427014),
    (30.0, 0.018795888861416751497),
    (40.0, 0.014100335983377813625),
    (100.0, 0.0056416137829894329036),
    (1000.0, 0.0005641893014533876542),
    (1000000.0, 5.6418958354747419216e-7),
];
pub const LOG_NORMAL_CDF: &[(f64, f64)] = &[
    (-37.0, -689.0305855768905936),
    (-36.5, -670.64200000031370137),
    (-36.0, -652.50322759379839685),
    (-35.5, -634.614263155088385),
    (-35.0, -616.97510126192251347),
    (-34.5, -599.58573625947235769),
    (-34.0, -582.44616224687168508),
    (-33.5, -565.55637306275800372),
    (-33.0, -548.91636226973811423),
    (-32.5, -532.52612313768029991),
    (-32.0, -516.38564862572537417),
    (-31.5, -500.49493136289709658),
    (-31.0, -484.85396362717928858),
    (-30.5, -469.46273732291211439),
    (-30.0, -454.32124395634319711),
    (-29.5, -439.42947460915022775),
    (-29.0, -424.78741990973016268),
    (-28.5, -410.3950700020256018),
    (-28.0, -396.2524145116310384),
    (-27.5, -382.35944250888983283),
    (-27.0, -368.71614246865635257),
    (-26.5, -355.32250222635599044),
    (-26.0, -342.17850892992783169),
    (-25.5, -329.28414898717953476),
    (-25.0, -316.63940800802025894),
    (-24.5, -304.24427074096371117),
    (-24.0, -292.09872100320778812),
    (-23.5, -280.20274160349768506),
    (-23.0, -268.55631425686310796),
    (-22.5, -257.15941949018418048),
    (-22.0, -246.01203653738091706),
    (-21.5, -235.11414322283302036),
    (-21.0, -224.46571583141447131),
    (-20.5, -214.06672896326380017),
    (-20.0, -203.91715537109726394),
    (-19.5, -194.01696577749749941),
    (-19.0, -184.36612866916096735),
    (-18.5, -174.96461006454661228),
    (-18.0, -165.81237325071418009),
    (-17.5, -156.90937848434641778),
    (-17.0, -148.25558265098038988),
    (-16.5, -139.85093887528520398),
    (-16.0, -131.69539607375968629),
    (-15.5, -123.78889843941037612),
    (-15.0, -116.13138484571169524),
    (-14.5, -108.72278815432047233),
    (-14.0, -101.56303440744995824),
    (-13.5, -94.652041881282891977),
    (-13.0, -87.989719971022519666),
    (-12.5, -81.575967870743883217),
    (-12.0, -75.410673001568795939),
    (-11.5, -69.493709129095346263),
    (-11.0, -63.824934094423715502),
    (-10.5, -58.404187061073243416),
    (-10.0, -53.231285150512470578),
    (-9.5, -48.306019298965230282),
    (-9.0, -43.628149113332115497),
    (-8.5, -39.197396428217669289),
    (-8.0, -35.013437159914549896),
    (-7.5, -31.075890902890001243),
    (-7.0, -27.384307498811075243),
    (-6.5, -23.938149495161838554),
    (-6.0, -20.736768949974705655),
    (-5.5, -17.779376352625260511),
    (-5.0, -15.064998393988725736),
    (-4.5, -12.592419735713078666),
    (-4.0, -10.360101486527290828),
    (-3.5, -8.366065308344092935),
    (-3.0, -6.6077262215103495433),
    (-2.5, -5.0816482772786904984),
    (-2.0, -3.7831843336820319488),
    (-1.5, -2.705944400823889807),
    (-1.0, -1.8410216450092635058),
    (-0.5, -1.1759117615936186089),
    (0.0, -0.69314718055994530942),
    (0.5, -0.36894641528865639307),
    (1.0, -0.17275377902344988953),
    (1.5, -0.069143455612233982993),
    (2.0, -0.023012909328963488465),
    (2.5, -0.006229025485860002381),
    (3.0, -0.0013508099647481937988),
    (3.5, -0.00023265614137680455218),
    (4.0, -0.00003167174337748926386),
    (4.5, -3.3976788968344661445e-6),
    (5.0, -2.8665161296376359338e-7),
    (5.5, -1.8989562646189462989e-8),
    (6.0, -9.8658764552437573169e-10),
    (6.5, -4.0160005839397591118e-11),
    (7.0, -1.2798125438866539645e-12),
    (7.5, -3.1908916729109471367e-14),
    (8.0, -6.2209605742717860585e-16),
];
/// (mu, sig2, l, u, zhat, muhat, sighat2) from closed forms at 60 digits.
pub const TRUNC: &[(f64, f64, f64, f64, f64, f64, f64)] = &[
    (0.0, 1.0, f64::NEG_INFINITY, f64::INFINITY, 1.0, 0.0, 1.0),
    (0.0, 1.0, -1.0, 1.0, 0.68268949213708589717, 0.0, 0.29112509477279321119),
    (0.0, 1.0, 0.0, f64::INFINITY, 0.5, 0.79788456080286535588, 0.36338022763241865692),
    (0.5, 2.0, -1.0, 3.0, 0.81702788095498668087, 0.74871241007888400568, 0.98609420445345749341),
    (-2.0, 0.25, 1.0, 1.5, 9.853078324938123057e-10, 1.0786054516891399178, 0.0056870952793779327403),
    (3.0, 4.0, f64::NEG_INFINITY, -2.0, 0.006209665325776135167, -2.6454895953278145009, 0.35589520568446177124),
    (0.0, 1.0, 8.0, 9.0, 6.2198319858658302829e-16, 8.1211889929797971226, 0.014148542782748111039),
    (0.0, 1.0, -9.0, -8.0, 6.2198319858658302829e-16, -8.1211889929797971226, 0.014148542782748111039),
    (1.0, 9.0, 20.0, f64::INFINITY, 1.1996022615582023175e-10, 20.452567698478662345, 0.19639620719914201423),
    (0.0, 1.0, 2.0, 2.001, 0.000053937002537650690645, 2.000499833291683288, 8.3333313880540427523e-8),
    (0.0, 1.0, -0.003, 0.004, 0.00279258991219807919, 0.00049999795833666806444, 4.0833266638902785413e-6),
    (0.0, 1.0, 10.0, 10.3, 7.2675465162678848068e-24, 10.083683803670001068, 0.0049795528256788845593),
    (0.0, 1.0, 25.0, f64::INFINITY, 3.0566967063825609164e-138, 25.039873012057562583, 0.0015848414703928893524),
];
